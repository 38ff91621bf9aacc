//! Network file formats.
//!
//! The edge-list format is line based. The first significant line is a
//! header `cactus-v1 directed` or `cactus-v1 undirected`; each further line
//! is `a <u> <v>` (an arc, directed files), `e <u> <v>` (an edge, undirected
//! files), `l <v> <species>` (a species label) or `v <v>` (a vertex with no
//! links). `#` starts a comment. Vertices are declared by use.
//!
//! The extended Newick subset accepts plain Newick trees plus hybrid tags
//! `#H<n>`: the two occurrences of a tag are one reticulation vertex, and at
//! most one of them may carry a subtree. Branch lengths, internal names and
//! `[...]` comments are ignored; leaf names become species labels.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::cactus::{CactusError, Digraph, Graph, Network, RootedCactus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("hybrid tag #H{tag} occurs {count} times, expected 2")]
    UnbalancedHybridTag { tag: u64, count: usize },
    #[error("{}{source}", .line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Invalid {
        line: Option<usize>,
        #[source]
        source: CactusError,
    },
}

impl FormatError {
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Syntax { line, .. } => Some(*line),
            FormatError::Invalid { line, .. } => *line,
            FormatError::UnbalancedHybridTag { .. } => None,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

const HEADER: &str = "cactus-v1";

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

enum Builder {
    Directed(Digraph),
    Undirected(Graph),
}

impl Builder {
    fn vertex(&mut self, name: &str) -> usize {
        match self {
            Builder::Directed(g) => g.vertex(name),
            Builder::Undirected(g) => g.vertex(name),
        }
    }
}

/// Parses the edge-list format and validates the result.
pub fn parse_edgelist(text: &str) -> Result<Network, FormatError> {
    let mut lines = significant_lines(text);
    let Some((header_line, header)) = lines.next() else {
        return Err(syntax(1, "missing header"));
    };
    let mut builder = match header.as_slice() {
        [HEADER, "directed"] => Builder::Directed(Digraph::new()),
        [HEADER, "undirected"] => Builder::Undirected(Graph::new()),
        _ => {
            return Err(syntax(
                header_line,
                "expected `cactus-v1 directed` or `cactus-v1 undirected`",
            ))
        }
    };
    let mut first_mention: HashMap<String, usize> = HashMap::new();
    let mut link_lines = Vec::new();
    let mut labelled: HashMap<usize, usize> = HashMap::new();
    let mut species = Vec::new();

    for (line, tokens) in lines {
        for name in tokens.iter().skip(1).take(if tokens[0] == "l" { 1 } else { 2 }) {
            first_mention.entry(name.to_string()).or_insert(line);
        }
        match (tokens[0], tokens.len(), &mut builder) {
            ("a", 3, Builder::Directed(g)) => {
                g.add_arc(tokens[1], tokens[2]);
                link_lines.push(line);
            }
            ("e", 3, Builder::Undirected(g)) => {
                g.add_edge(tokens[1], tokens[2]);
                link_lines.push(line);
            }
            ("a", 3, Builder::Undirected(_)) => return Err(syntax(line, "arc line in an undirected file")),
            ("e", 3, Builder::Directed(_)) => return Err(syntax(line, "edge line in a directed file")),
            ("l", 3, b) => {
                let v = b.vertex(tokens[1]);
                if labelled.insert(v, line).is_some() {
                    return Err(syntax(line, format!("vertex {} is labelled twice", tokens[1])));
                }
                species.push((v, tokens[2].to_string()));
            }
            ("v", 2, b) => {
                b.vertex(tokens[1]);
            }
            ("a" | "e" | "l" | "v", _, _) => {
                return Err(syntax(line, format!("wrong number of fields for `{}`", tokens[0])))
            }
            (other, _, _) => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
    }

    let locate = |e: CactusError| {
        let line = e
            .link()
            .map(|i| link_lines[i])
            .or_else(|| e.vertex().and_then(|v| first_mention.get(v).copied()));
        FormatError::Invalid { line, source: e }
    };
    match builder {
        Builder::Directed(mut g) => {
            for (v, sp) in species {
                g.set_species(v, sp);
            }
            Ok(g.validate_rooted().map_err(locate)?.into())
        }
        Builder::Undirected(mut g) => {
            for (v, sp) in species {
                g.set_species(v, sp);
            }
            Ok(g.validate_unrooted().map_err(locate)?.into())
        }
    }
}

/// Numeric names sort by value, others after them alphabetically.
fn name_key(name: &str) -> (bool, u64, &str) {
    match name.parse::<u64>() {
        Ok(n) => (false, n, ""),
        Err(_) => (true, 0, name),
    }
}

fn write_records(out: &mut String, tag: char, mut pairs: Vec<(&str, &str)>) {
    pairs.sort_by(|a, b| (name_key(a.0), name_key(a.1)).cmp(&(name_key(b.0), name_key(b.1))));
    for (u, v) in pairs {
        writeln!(out, "{tag} {u} {v}").unwrap();
    }
}

struct Listing<'a> {
    directed: bool,
    links: Vec<(&'a str, &'a str)>,
    isolated: Option<&'a str>,
    labels: Vec<(&'a str, String)>,
}

/// Writes a network in the edge-list format. Records are sorted by vertex
/// name, so the output depends only on the named graph.
pub fn write_edgelist(net: &Network) -> String {
    let mut out = String::new();
    let Listing {
        directed,
        links,
        isolated,
        labels,
    } = match net {
        Network::Rooted(n) => Listing {
            directed: true,
            links: (0..n.vertex_count())
                .flat_map(|u| n.children(u).iter().map(move |&v| (n.name(u), n.name(v))))
                .collect(),
            isolated: (n.vertex_count() == 1).then(|| n.name(0)),
            labels: (0..n.vertex_count())
                .filter_map(|v| n.species(v).map(|sp| (n.name(v), sp.to_string())))
                .collect(),
        },
        Network::Unrooted(g) => Listing {
            directed: false,
            links: g.edges().iter().map(|&(u, v)| (g.name(u), g.name(v))).collect(),
            isolated: (g.vertex_count() == 1).then(|| g.name(0)),
            labels: (0..g.vertex_count())
                .filter_map(|v| g.species(v).map(|sp| (g.name(v), sp.to_string())))
                .collect(),
        },
    };
    writeln!(out, "{HEADER} {}", if directed { "directed" } else { "undirected" }).unwrap();
    if let Some(v) = isolated {
        writeln!(out, "v {v}").unwrap();
    }
    write_records(&mut out, if directed { 'a' } else { 'e' }, links);
    let mut labels = labels;
    labels.sort_by(|a, b| name_key(a.0).cmp(&name_key(b.0)));
    for (v, sp) in labels {
        writeln!(out, "l {v} {sp}").unwrap();
    }
    out
}

const MAX_NESTING: usize = 10_000;

struct Newick<'a> {
    text: &'a [u8],
    pos: usize,
    graph: Digraph,
    next_id: usize,
    /// tag -> (vertex, occurrences, occurrences with a subtree, leaf name)
    hybrids: BTreeMap<u64, (usize, usize, usize, Option<String>)>,
}

impl Newick<'_> {
    fn line(&self) -> usize {
        1 + self.text[..self.pos].iter().filter(|&&c| c == b'\n').count()
    }

    fn error(&self, message: impl Into<String>) -> FormatError {
        syntax(self.line(), message)
    }

    fn skip_space(&mut self) -> Result<(), FormatError> {
        loop {
            match self.text.get(self.pos) {
                Some(c) if c.is_ascii_whitespace() => self.pos += 1,
                Some(b'[') => match self.text[self.pos..].iter().position(|&c| c == b']') {
                    Some(end) => self.pos += end + 1,
                    None => return Err(self.error("unterminated comment")),
                },
                _ => return Ok(()),
            }
        }
    }

    fn peek(&mut self) -> Result<Option<u8>, FormatError> {
        self.skip_space()?;
        Ok(self.text.get(self.pos).copied())
    }

    fn token(&mut self) -> Result<String, FormatError> {
        self.skip_space()?;
        let start = self.pos;
        while let Some(&c) = self.text.get(self.pos) {
            if b"(),:;[".contains(&c) || c.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .map(str::to_string)
            .map_err(|_| self.error("invalid UTF-8"))
    }

    fn skip_branch_lengths(&mut self) -> Result<(), FormatError> {
        while self.peek()? == Some(b':') {
            self.pos += 1;
            self.token()?;
        }
        Ok(())
    }

    fn fresh(&mut self) -> usize {
        let name = format!("v{}", self.next_id);
        self.next_id += 1;
        self.graph.vertex(&name)
    }

    /// Parses one subtree and returns its vertex.
    fn subtree(&mut self, depth: usize) -> Result<usize, FormatError> {
        if depth > MAX_NESTING {
            return Err(self.error("nesting too deep"));
        }
        let mut kids = Vec::new();
        if self.peek()? == Some(b'(') {
            self.pos += 1;
            loop {
                kids.push(self.subtree(depth + 1)?);
                match self.peek()? {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected `,` or `)`")),
                }
            }
        }
        let label = self.token()?;
        self.skip_branch_lengths()?;
        let (name, tag) = match label.find("#H") {
            Some(i) => {
                let tag: u64 = label[i + 2..]
                    .parse()
                    .map_err(|_| self.error(format!("malformed hybrid tag `{}`", &label[i..])))?;
                (label[..i].to_string(), Some(tag))
            }
            None => (label, None),
        };
        if kids.is_empty() && name.is_empty() && tag.is_none() {
            return Err(self.error("empty leaf"));
        }
        let v = match tag {
            Some(tag) => {
                let id = match self.hybrids.get(&tag) {
                    Some(h) => h.0,
                    None => self.graph.vertex(&format!("H{tag}")),
                };
                let entry = self.hybrids.entry(tag).or_insert((id, 0, 0, None));
                entry.1 += 1;
                if !kids.is_empty() {
                    entry.2 += 1;
                }
                if entry.2 > 1 {
                    return Err(self.error(format!("hybrid #H{tag} has a subtree at more than one occurrence")));
                }
                if !name.is_empty() && entry.3.is_none() {
                    entry.3 = Some(name);
                }
                id
            }
            None => {
                let v = self.fresh();
                if kids.is_empty() {
                    self.graph.set_species(v, name);
                }
                v
            }
        };
        for k in kids {
            self.graph.add_arc_ids(v, k);
        }
        Ok(v)
    }
}

/// Parses the supported extended Newick subset and validates the result.
pub fn parse_enewick(text: &str) -> Result<RootedCactus, FormatError> {
    let mut p = Newick {
        text: text.as_bytes(),
        pos: 0,
        graph: Digraph::new(),
        next_id: 0,
        hybrids: BTreeMap::new(),
    };
    p.subtree(0)?;
    if p.peek()? != Some(b';') {
        return Err(p.error("expected `;`"));
    }
    p.pos += 1;
    if p.peek()?.is_some() {
        return Err(p.error("trailing input after `;`"));
    }
    for (&tag, &(v, count, with_subtree, ref name)) in &p.hybrids {
        if count != 2 {
            return Err(FormatError::UnbalancedHybridTag { tag, count });
        }
        if with_subtree == 0 {
            if let Some(name) = name {
                p.graph.set_species(v, name.as_str());
            }
        }
    }
    p.graph
        .validate_rooted()
        .map_err(|source| FormatError::Invalid { line: None, source })
}

/// Parses either format: files whose first significant line starts with the
/// edge-list header are edge lists, anything else is extended Newick.
pub fn parse_network(text: &str) -> Result<Network, FormatError> {
    let is_edgelist = significant_lines(text)
        .next()
        .is_some_and(|(_, tokens)| tokens[0] == HEADER);
    if is_edgelist {
        parse_edgelist(text)
    } else {
        Ok(parse_enewick(text)?.into())
    }
}
