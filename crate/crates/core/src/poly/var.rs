use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::PolyError;

/// Species name attached to a leaf. Shared so that cloning variables is cheap.
pub type Species = Arc<str>;

/// Returns true if `name` is a nonempty string over `[A-Za-z0-9_.-]`.
pub fn is_valid_species_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-'))
}

/// A polynomial variable.
///
/// The derived order is the order used for canonical printing: the base
/// variables alphabetically, then species leaf variables by name, then
/// species reticulation-leaf variables by name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Q,
    R,
    S,
    X,
    Y,
    Z,
    /// `x:<name>`, a leaf carrying a species label.
    SpeciesLeaf(Species),
    /// `r:<name>`, a reticulation leaf carrying a species label.
    SpeciesRetLeaf(Species),
}

impl VarId {
    pub fn species_leaf(name: impl Into<Species>) -> Self {
        VarId::SpeciesLeaf(name.into())
    }

    pub fn species_ret_leaf(name: impl Into<Species>) -> Self {
        VarId::SpeciesRetLeaf(name.into())
    }

    /// Variables that may only label leaves of a special pair.
    pub fn is_leaf_kind(&self) -> bool {
        matches!(
            self,
            VarId::X | VarId::R | VarId::Q | VarId::SpeciesLeaf(_) | VarId::SpeciesRetLeaf(_)
        )
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Q => f.write_str("q"),
            VarId::R => f.write_str("r"),
            VarId::S => f.write_str("s"),
            VarId::X => f.write_str("x"),
            VarId::Y => f.write_str("y"),
            VarId::Z => f.write_str("z"),
            VarId::SpeciesLeaf(name) => write!(f, "x:{name}"),
            VarId::SpeciesRetLeaf(name) => write!(f, "r:{name}"),
        }
    }
}

impl FromStr for VarId {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let species = |name: &str, ctor: fn(Species) -> VarId| {
            if is_valid_species_name(name) {
                Ok(ctor(name.into()))
            } else {
                Err(PolyError::InvalidVariable(s.to_string()))
            }
        };
        match s {
            "q" => Ok(VarId::Q),
            "r" => Ok(VarId::R),
            "s" => Ok(VarId::S),
            "x" => Ok(VarId::X),
            "y" => Ok(VarId::Y),
            "z" => Ok(VarId::Z),
            _ => {
                if let Some(name) = s.strip_prefix("x:") {
                    species(name, VarId::SpeciesLeaf)
                } else if let Some(name) = s.strip_prefix("r:") {
                    species(name, VarId::SpeciesRetLeaf)
                } else {
                    Err(PolyError::InvalidVariable(s.to_string()))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_puts_species_after_base_variables() {
        let mut vars = vec![
            VarId::species_ret_leaf("a"),
            VarId::species_leaf("b"),
            VarId::species_leaf("a"),
            VarId::Z,
            VarId::Y,
            VarId::X,
            VarId::S,
            VarId::R,
            VarId::Q,
        ];
        vars.sort();
        let rendered: Vec<String> = vars.iter().map(ToString::to_string).collect();
        assert_eq!(rendered, ["q", "r", "s", "x", "y", "z", "x:a", "x:b", "r:a"]);
    }

    #[test]
    fn parse_round_trips_display() {
        for s in ["q", "r", "s", "x", "y", "z", "x:hum", "r:Pan_tro.1-a"] {
            assert_eq!(s.parse::<VarId>().unwrap().to_string(), s);
        }
        assert!("x:".parse::<VarId>().is_err());
        assert!("x:bad name".parse::<VarId>().is_err());
        assert!("w".parse::<VarId>().is_err());
    }

    #[test]
    fn leaf_kinds() {
        assert!(VarId::X.is_leaf_kind());
        assert!(VarId::Q.is_leaf_kind());
        assert!(VarId::species_ret_leaf("a").is_leaf_kind());
        assert!(!VarId::Y.is_leaf_kind());
        assert!(!VarId::Z.is_leaf_kind());
        assert!(!VarId::S.is_leaf_kind());
    }
}
