//! Action files.
//!
//! ```text
//! #! ttgeo action v1
//! [group]
//! degree = 2
//! gen = (1 2)
//! [action]
//! poset = two_points.cat
//! gen 1: (a b)
//! ```
//!
//! Group generators are 1-based cycles on `1..=degree`; `gen i:` gives the
//! permutation of poset objects by which the `i`-th generator acts, as
//! cycles on object names. Generators without an action line act trivially.
//! The `poset` key is optional and is resolved relative to the action file.

use std::fmt::Write as _;
use std::sync::Arc;

use super::{cycles_with, GPoset, Perm, PermGroup, DEFAULT_GROUP_CAP};
use crate::error::{Error, Result};
use crate::fincat::parse::sections;
use crate::fincat::FiniteCategory;

pub const ACTION_HEADER: &str = "#! ttgeo action v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub poset_path: Option<String>,
    /// `(generator index, cycles on object names)`.
    pub actions: Vec<(usize, Vec<Vec<String>>)>,
}

fn parse_cycles(n: usize, s: &str) -> Result<Vec<Vec<String>>> {
    let s = s.trim();
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| Error::parse(n, format!("expected cycle in `{s}`")))?;
        let end = body.find(')').ok_or_else(|| Error::parse(n, format!("unterminated cycle in `{s}`")))?;
        let cyc: Vec<String> =
            body[..end].split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(String::from).collect();
        if !cyc.is_empty() {
            out.push(cyc);
        }
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

fn cycles_to_perm(n: usize, degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
    let mut p: Perm = (0..degree).collect();
    let mut used = vec![false; degree];
    for c in cycles {
        for (i, &a) in c.iter().enumerate() {
            if a >= degree || std::mem::replace(&mut used[a], true) {
                return Err(Error::parse(n, "cycles are not disjoint or exceed the degree"));
            }
            p[a] = c[(i + 1) % c.len()];
        }
    }
    Ok(p)
}

pub fn parse_action(text: &str) -> Result<ActionSpec> {
    let lines = sections(text, ACTION_HEADER, &["group", "action"])?;
    let mut degree = None;
    let mut gens_raw = Vec::new();
    let mut poset_path = None;
    let mut actions = Vec::new();
    for (n, section, line) in lines {
        let (key, value) = line.split_once(['=', ':']).ok_or_else(|| Error::parse(n, "expected `key = value`"))?;
        let key = key.trim();
        match (section.as_str(), key) {
            ("group", "degree") => {
                degree = Some(value.trim().parse::<usize>().map_err(|_| Error::parse(n, "bad degree"))?);
            }
            ("group", "gen") => gens_raw.push((n, parse_cycles(n, value)?)),
            ("action", "poset") => poset_path = Some(value.trim().to_string()),
            ("action", k) if k.starts_with("gen") => {
                let i: usize = k[3..].trim().parse().map_err(|_| Error::parse(n, "expected `gen <i>:`"))?;
                if i == 0 {
                    return Err(Error::parse(n, "generators are numbered from 1"));
                }
                actions.push((i - 1, parse_cycles(n, value)?));
            }
            _ => return Err(Error::parse(n, format!("unexpected key `{key}`"))),
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(1, "missing `degree`"))?;
    let mut generators = Vec::new();
    for (n, cycles) in gens_raw {
        let numeric = cycles
            .iter()
            .map(|c| {
                c.iter()
                    .map(|t| match t.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(Error::parse(n, format!("bad point `{t}`"))),
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        generators.push(cycles_to_perm(n, degree, &numeric)?);
    }
    if let Some(&(i, _)) = actions.iter().find(|(i, _)| *i >= generators.len()) {
        return Err(Error::parse(1, format!("action given for undefined generator {}", i + 1)));
    }
    Ok(ActionSpec { degree, generators, poset_path, actions })
}

impl ActionSpec {
    /// Binds the action to a poset.
    pub fn resolve(&self, poset: Arc<FiniteCategory>) -> Result<GPoset> {
        let group = PermGroup::new(self.degree, self.generators.clone(), DEFAULT_GROUP_CAP)?;
        let n = poset.object_count();
        let mut acts: Vec<Perm> = vec![(0..n).collect(); self.generators.len()];
        for (i, cycles) in &self.actions {
            let numeric = cycles
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|name| {
                            poset.object_id(name).ok_or_else(|| Error::parse(0, format!("unknown object `{name}`")))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            acts[*i] = cycles_to_perm(0, n, &numeric)?;
        }
        GPoset::new(poset, group, acts)
    }
}

/// Serialises a G-poset action; `poset_path` is written when given.
pub fn write_action(gp: &GPoset, poset_path: Option<&str>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{ACTION_HEADER}");
    let _ = writeln!(s, "[group]");
    let _ = writeln!(s, "degree = {}", gp.group.degree());
    for g in gp.group.generators() {
        let _ = writeln!(s, "gen = {}", cycles_with(g, |i| (i + 1).to_string()));
    }
    let _ = writeln!(s, "[action]");
    if let Some(p) = poset_path {
        let _ = writeln!(s, "poset = {p}");
    }
    for (i, a) in gp.generator_actions().iter().enumerate() {
        let _ = writeln!(s, "gen {}: {}", i + 1, cycles_with(a, |x| gp.poset.object_name(x).to_string()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_action_round_trip() {
        let text = "#! ttgeo action v1\n[group]\ndegree = 2\ngen = (1 2)\n[action]\nposet = p.cat\ngen 1: (a b)\n";
        let spec = parse_action(text).unwrap();
        assert_eq!(spec.poset_path.as_deref(), Some("p.cat"));
        let p = Arc::new(FiniteCategory::poset(["a", "b"], &[]).unwrap());
        let gp = spec.resolve(p.clone()).unwrap();
        assert_eq!(gp.act(1, 0), 1);
        let again = parse_action(&write_action(&gp, Some("p.cat"))).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_action("#! ttgeo action v1\n[group]\ngen = (1 2)\n").is_err());
        assert!(parse_action("#! ttgeo action v1\n[group]\ndegree = 2\ngen = (1 3)\n").is_err());
        assert!(parse_action("#! ttgeo action v1\n[group]\ndegree = 2\n[action]\ngen 1: (a b)\n").is_err());
    }
}
