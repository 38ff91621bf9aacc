use std::cmp::Ordering;
use std::fmt;

use super::VarId;

/// Variables with a fixed slot in [`Monomial`], in variable order.
static BASE: [VarId; 6] = [VarId::Q, VarId::R, VarId::S, VarId::X, VarId::Y, VarId::Z];

fn base_slot(v: &VarId) -> Option<usize> {
    match v {
        VarId::Q => Some(0),
        VarId::R => Some(1),
        VarId::S => Some(2),
        VarId::X => Some(3),
        VarId::Y => Some(4),
        VarId::Z => Some(5),
        VarId::SpeciesLeaf(_) | VarId::SpeciesRetLeaf(_) => None,
    }
}

/// A product of variables with positive exponents.
///
/// Base variables are stored as a dense exponent array; species variables,
/// which all sort after them, as a sorted sparse list. The empty monomial is
/// the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    base: [u32; 6],
    species: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        Self::from_powers([(v, 1)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order.
    /// Zero exponents are dropped and repeated variables are merged.
    pub fn from_powers(powers: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut base = [0; 6];
        let mut v: Vec<(VarId, u32)> = Vec::new();
        for (var, e) in powers {
            match base_slot(&var) {
                Some(i) => base[i] += e,
                None if e > 0 => v.push((var, e)),
                None => {}
            }
        }
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut species: Vec<(VarId, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match species.last_mut() {
                Some((last, acc)) if *last == var => *acc += e,
                _ => species.push((var, e)),
            }
        }
        Monomial { base, species }
    }

    pub fn is_one(&self) -> bool {
        self.base == [0; 6] && self.species.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.base.iter().sum::<u32>() + self.species.iter().map(|(_, e)| e).sum::<u32>()
    }

    pub fn exponent(&self, v: &VarId) -> u32 {
        match base_slot(v) {
            Some(i) => self.base[i],
            None => self
                .species
                .binary_search_by(|(w, _)| w.cmp(v))
                .map(|i| self.species[i].1)
                .unwrap_or(0),
        }
    }

    /// Variables with nonzero exponent, in variable order.
    pub fn powers(&self) -> impl Iterator<Item = (&VarId, u32)> {
        BASE.iter()
            .zip(self.base)
            .filter(|(_, e)| *e > 0)
            .chain(self.species.iter().map(|(v, e)| (v, *e)))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut base = self.base;
        for (b, o) in base.iter_mut().zip(other.base) {
            *b += o;
        }
        let species = if other.species.is_empty() {
            self.species.clone()
        } else if self.species.is_empty() {
            other.species.clone()
        } else {
            merge(&self.species, &other.species)
        };
        Monomial { base, species }
    }

    /// Lexicographic comparison of the dense exponent vectors under the
    /// variable order.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.base
            .cmp(&other.base)
            .then_with(|| sparse_lex_cmp(&self.species, &other.species))
    }

    /// Order used for printing: higher total degree first, then higher
    /// exponent vector first.
    pub fn print_cmp(&self, other: &Monomial) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.lex_cmp(self))
    }
}

fn merge(a: &[(VarId, u32)], b: &[(VarId, u32)]) -> Vec<(VarId, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn sparse_lex_cmp(a: &[(VarId, u32)], b: &[(VarId, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                // `a` has a nonzero exponent where `b` has zero.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(eb) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            },
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.powers().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
