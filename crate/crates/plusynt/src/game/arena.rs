//! Explicit game arenas: partitioned directed graphs with event labels.

use crate::game::EventSet;
use crate::{Error, NodeSet, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    System,
    Environment,
}

/// A finite arena. Every node has at least one successor.
#[derive(Debug, Clone)]
pub struct Arena {
    pub owner: Vec<Owner>,
    pub gamma: Vec<EventSet>,
    pub succ: Vec<Vec<u32>>,
}

impl Arena {
    pub fn new(owner: Vec<Owner>, gamma: Vec<EventSet>, succ: Vec<Vec<u32>>) -> Result<Self> {
        if owner.len() != gamma.len() || owner.len() != succ.len() {
            return Err(Error::malformed("arena", "node vectors differ in length"));
        }
        for (v, edges) in succ.iter().enumerate() {
            if edges.is_empty() {
                return Err(Error::malformed("arena", format!("node {v} has no successors")));
            }
            for &w in edges {
                if w as usize >= owner.len() {
                    return Err(Error::malformed("arena", format!("edge {v} -> {w} out of range")));
                }
            }
        }
        Ok(Arena { owner, gamma, succ })
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    /// Checks that `stem · cycle` follows arena edges and the cycle
    /// closes back onto its first node.
    pub fn check_lasso(&self, stem: &[u32], cycle: &[u32]) -> Result<()> {
        if cycle.is_empty() {
            return Err(Error::malformed("lasso", "empty cycle"));
        }
        let path: Vec<u32> = stem.iter().chain(cycle).copied().collect();
        for pair in path.windows(2) {
            if !self.succ[pair[0] as usize].contains(&pair[1]) {
                return Err(Error::malformed("lasso", format!("{} -> {} is not an edge", pair[0], pair[1])));
            }
        }
        let last = *cycle.last().unwrap();
        if !self.succ[last as usize].contains(&cycle[0]) {
            return Err(Error::malformed("lasso", "cycle does not close"));
        }
        Ok(())
    }

    /// Parses the plain-text arena format:
    ///
    /// ```text
    /// arena v1
    /// events: a b c d
    /// node 0 system d
    /// node 1 env c d
    /// edge 0 1
    /// ```
    pub fn parse(text: &str) -> Result<(Arena, Vec<String>)> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::malformed("arena", "empty input"))?;
        if header != "arena v1" {
            return Err(Error::malformed("arena", format!("unknown header '{header}'")));
        }
        let mut events: Vec<String> = Vec::new();
        let mut owner = Vec::new();
        let mut gamma = Vec::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("events:") => {
                    events = parts.map(str::to_string).collect();
                }
                Some("node") => {
                    let id: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::malformed("arena", "node needs a numeric id"))?;
                    if id != owner.len() {
                        return Err(Error::malformed("arena", "node ids must be consecutive from 0"));
                    }
                    let who = match parts.next() {
                        Some("system") => Owner::System,
                        Some("env") => Owner::Environment,
                        other => {
                            return Err(Error::malformed(
                                "arena",
                                format!("expected owner system/env, found {other:?}"),
                            ))
                        }
                    };
                    let mut set: EventSet = 0;
                    for name in parts {
                        let i = events
                            .iter()
                            .position(|e| e == name)
                            .ok_or_else(|| Error::malformed("arena", format!("undeclared event {name}")))?;
                        set |= 1 << i;
                    }
                    owner.push(who);
                    gamma.push(set);
                }
                Some("edge") => {
                    let src = parts.next().and_then(|s| s.parse().ok());
                    let dst = parts.next().and_then(|s| s.parse().ok());
                    match (src, dst) {
                        (Some(s), Some(d)) => edges.push((s, d)),
                        _ => return Err(Error::malformed("arena", "edge needs two node ids")),
                    }
                }
                Some(other) => {
                    return Err(Error::malformed("arena", format!("unknown directive '{other}'")))
                }
                None => {}
            }
        }
        let mut succ = vec![Vec::new(); owner.len()];
        for (s, d) in edges {
            if s as usize >= owner.len() {
                return Err(Error::malformed("arena", format!("edge source {s} out of range")));
            }
            succ[s as usize].push(d);
        }
        Ok((Arena::new(owner, gamma, succ)?, events))
    }

    pub fn emit(&self, events: &[String]) -> String {
        let mut out = String::from("arena v1\n");
        out.push_str(&format!("events: {}\n", events.join(" ")));
        for v in 0..self.len() {
            let who = match self.owner[v] {
                Owner::System => "system",
                Owner::Environment => "env",
            };
            let mut line = format!("node {v} {who}");
            for (i, name) in events.iter().enumerate() {
                if self.gamma[v] >> i & 1 == 1 {
                    line.push(' ');
                    line.push_str(name);
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
        for (v, edges) in self.succ.iter().enumerate() {
            for &w in edges {
                out.push_str(&format!("edge {v} {w}\n"));
            }
        }
        out
    }

    /// DOT rendering: circles are system nodes, boxes environment nodes.
    pub fn to_dot(&self, events: &[String]) -> String {
        let mut out = String::from("digraph arena {\n");
        for v in 0..self.len() {
            let shape = match self.owner[v] {
                Owner::System => "circle",
                Owner::Environment => "box",
            };
            let label: Vec<&str> = events
                .iter()
                .enumerate()
                .filter(|(i, _)| self.gamma[v] >> i & 1 == 1)
                .map(|(_, e)| e.as_str())
                .collect();
            out.push_str(&format!("  n{v} [shape={shape},label=\"{v}: {}\"];\n", label.join(",")));
        }
        for (v, edges) in self.succ.iter().enumerate() {
            for &w in edges {
                out.push_str(&format!("  n{v} -> n{w};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// System-controllable predecessors of `target`.
    pub fn cpre(&self, target: &NodeSet, out: &mut NodeSet) {
        out.clear();
        for v in 0..self.len() as u32 {
            let hit = match self.owner[v as usize] {
                Owner::System => self.succ[v as usize].iter().any(|&w| target.contains(w)),
                Owner::Environment => self.succ[v as usize].iter().all(|&w| target.contains(w)),
            };
            if hit {
                out.insert(v);
            }
        }
    }

    /// Environment-controllable predecessors of `target`.
    pub fn cpre_env(&self, target: &NodeSet, out: &mut NodeSet) {
        out.clear();
        for v in 0..self.len() as u32 {
            let hit = match self.owner[v as usize] {
                Owner::Environment => self.succ[v as usize].iter().any(|&w| target.contains(w)),
                Owner::System => self.succ[v as usize].iter().all(|&w| target.contains(w)),
            };
            if hit {
                out.insert(v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE: &str = "\
arena v1
events: a b c d
node 0 system d
node 1 env c d
node 2 system a d
node 3 env b d
node 4 system a
node 5 system c
edge 0 1
edge 1 0
edge 0 2
edge 2 0
edge 0 3
edge 3 0
edge 3 4
edge 4 3
edge 4 5
edge 5 4
edge 1 3
";

    #[test]
    fn text_format_round_trips() {
        let (arena, events) = Arena::parse(EXAMPLE).unwrap();
        assert_eq!(arena.len(), 6);
        assert_eq!(events, vec!["a", "b", "c", "d"]);
        assert_eq!(arena.owner[1], Owner::Environment);
        assert_eq!(arena.gamma[1], 0b1100);
        let emitted = arena.emit(&events);
        let (again, events2) = Arena::parse(&emitted).unwrap();
        assert_eq!(events, events2);
        assert_eq!(arena.gamma, again.gamma);
        assert_eq!(arena.succ, again.succ);
    }

    #[test]
    fn empty_successor_set_is_rejected() {
        let err = Arena::new(vec![Owner::System], vec![0], vec![vec![]]);
        assert!(err.is_err());
    }

    #[test]
    fn lasso_validation() {
        let (arena, _) = Arena::parse(EXAMPLE).unwrap();
        assert!(arena.check_lasso(&[0], &[1, 0]).is_ok());
        assert!(arena.check_lasso(&[0], &[4]).is_err());
        assert!(arena.check_lasso(&[], &[]).is_err());
    }
}
