//! Category files.
//!
//! ```text
//! #! ttgeo category v1
//! [objects]
//! x
//! y
//! [poset]
//! x < y
//! ```
//!
//! A general category replaces `[poset]` by `[morphisms]` (`f: x -> y`) and
//! `[compose]` (`h = f . g`, meaning `h = f ∘ g`). Identities are implicit and
//! may be referred to as `1_x`. A `[poset]` line may be a chain `a < b < c`.
//! Blank lines and lines starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{CategoryBuilder, FiniteCategory};
use crate::error::{Error, Result};

pub const CATEGORY_HEADER: &str = "#! ttgeo category v1";

/// Splits a versioned file into `(line number, section, content)` triples.
pub(crate) fn sections<'a>(
    text: &'a str,
    header: &str,
    known: &[&str],
) -> Result<Vec<(usize, String, &'a str)>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.by_ref().find(|(_, l)| !l.is_empty()) {
        Some((_, l)) if l == header => {}
        Some((n, l)) => return Err(Error::parse(n, format!("expected header `{header}`, found `{l}`"))),
        None => return Err(Error::parse(1, "empty file")),
    }
    let mut out = Vec::new();
    let mut current: Option<String> = None;
    for (n, line) in lines {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::parse(n, "unterminated section header"))?
                .trim();
            let base = name.split_whitespace().next().unwrap_or("");
            if !known.contains(&base) {
                return Err(Error::UnknownSection(name.to_string()));
            }
            current = Some(name.to_string());
            continue;
        }
        let section = current.clone().ok_or_else(|| Error::parse(n, "content before any section"))?;
        out.push((n, section, line));
    }
    Ok(out)
}

pub fn parse_category(text: &str) -> Result<FiniteCategory> {
    let lines = sections(text, CATEGORY_HEADER, &["objects", "poset", "morphisms", "compose"])?;
    let mut objects: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for &(n, ref s, line) in &lines {
        if s == "objects" {
            if line.contains(char::is_whitespace) {
                return Err(Error::parse(n, format!("object name `{line}` contains whitespace")));
            }
            if index.insert(line.to_string(), objects.len()).is_some() {
                return Err(Error::parse(n, format!("duplicate object `{line}`")));
            }
            objects.push(line.to_string());
        }
    }
    let obj = |n: usize, name: &str| {
        index.get(name.trim()).copied().ok_or_else(|| Error::parse(n, format!("unknown object `{}`", name.trim())))
    };
    let has_poset = lines.iter().any(|(_, s, _)| s == "poset");
    let has_general = lines.iter().any(|(_, s, _)| s == "morphisms" || s == "compose");
    if has_poset && has_general {
        return Err(Error::parse(1, "`[poset]` cannot be combined with `[morphisms]`/`[compose]`"));
    }
    if has_poset || !has_general {
        let mut rel = Vec::new();
        for &(n, ref s, line) in &lines {
            if s != "poset" {
                continue;
            }
            let parts: Vec<&str> = line.split('<').collect();
            if parts.len() < 2 {
                return Err(Error::parse(n, "expected `a < b`"));
            }
            for w in parts.windows(2) {
                rel.push((obj(n, w[0])?, obj(n, w[1])?));
            }
        }
        return FiniteCategory::poset(objects, &rel);
    }
    let mut b = CategoryBuilder::new(objects.clone());
    let mut mor: HashMap<String, usize> = objects.iter().enumerate().map(|(i, o)| (format!("1_{o}"), i)).collect();
    for &(n, ref s, line) in &lines {
        if s != "morphisms" {
            continue;
        }
        let (name, ty) = line.rsplit_once(':').ok_or_else(|| Error::parse(n, "expected `f: a -> b`"))?;
        let (a, c) = ty.rsplit_once("->").ok_or_else(|| Error::parse(n, "expected `f: a -> b`"))?;
        let name = name.trim();
        if name.is_empty() || mor.contains_key(name) {
            return Err(Error::parse(n, format!("missing or duplicate morphism name `{name}`")));
        }
        let id = b.add_morphism(name, obj(n, a)?, obj(n, c)?);
        mor.insert(name.to_string(), id);
    }
    let m = |n: usize, name: &str| {
        mor.get(name.trim()).copied().ok_or_else(|| Error::parse(n, format!("unknown morphism `{}`", name.trim())))
    };
    let mut seen = HashMap::new();
    for &(n, ref s, line) in &lines {
        if s != "compose" {
            continue;
        }
        let (h, rhs) = line.split_once('=').ok_or_else(|| Error::parse(n, "expected `h = f . g`"))?;
        let (f, g) = rhs
            .split_once(" . ")
            .or_else(|| rhs.split_once('.'))
            .ok_or_else(|| Error::parse(n, "expected `h = f . g`"))?;
        let (f, g, h) = (m(n, f)?, m(n, g)?, m(n, h)?);
        if let Some(prev) = seen.insert((f, g), h) {
            if prev != h {
                return Err(Error::parse(n, "conflicting composite"));
            }
        }
        b.set_composite(f, g, h);
    }
    b.build()
}

/// Serialises a category; posets use the `[poset]` form.
pub fn write_category(c: &FiniteCategory) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{CATEGORY_HEADER}");
    let _ = writeln!(s, "[objects]");
    for o in c.objects() {
        let _ = writeln!(s, "{o}");
    }
    if c.is_poset() {
        let _ = writeln!(s, "[poset]");
        for (f, m) in c.morphisms().iter().enumerate() {
            if !c.is_identity(f) {
                let _ = writeln!(s, "{} < {}", c.object_name(m.src), c.object_name(m.tgt));
            }
        }
        return s;
    }
    let _ = writeln!(s, "[morphisms]");
    for (f, m) in c.morphisms().iter().enumerate() {
        if !c.is_identity(f) {
            let _ = writeln!(s, "{}: {} -> {}", m.name, c.object_name(m.src), c.object_name(m.tgt));
        }
    }
    let _ = writeln!(s, "[compose]");
    for (f, g, h) in c.composable_pairs() {
        if !c.is_identity(f) && !c.is_identity(g) {
            let _ = writeln!(s, "{} = {} . {}", c.morphism(h).name, c.morphism(f).name, c.morphism(g).name);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = "#! ttgeo category v1\n[objects]\nx\ny\nz\n[poset]\nx < y < z\nx < z\n";

    const Z2: &str = "#! ttgeo category v1\n[objects]\n*\n[morphisms]\ns: * -> *\n[compose]\n1_* = s . s\n";

    #[test]
    fn chain_file() {
        let c = parse_category(CHAIN).unwrap();
        assert_eq!(c.morphism_count(), 6);
        assert_eq!(parse_category(&write_category(&c)).unwrap(), c);
    }

    #[test]
    fn group_file() {
        let c = parse_category(Z2).unwrap();
        assert_eq!(c.morphism_count(), 2);
        assert!(c.is_ei());
        assert_eq!(parse_category(&write_category(&c)).unwrap(), c);
    }

    #[test]
    fn transporter_names_round_trip() {
        for (name, t) in crate::fixtures::transporter_fixtures() {
            let back = parse_category(&write_category(&t.cat)).unwrap();
            if t.cat.is_poset() {
                assert_eq!(back.objects(), t.cat.objects());
                let shape = |c: &FiniteCategory| c.morphisms().iter().map(|m| (m.src, m.tgt)).collect::<Vec<_>>();
                assert_eq!(shape(&back), shape(&t.cat), "{name}");
            } else {
                assert_eq!(back, *t.cat, "{name}");
            }
        }
    }

    #[test]
    fn missing_composite() {
        let text = "#! ttgeo category v1\n[objects]\n*\n[morphisms]\ns: * -> *\n";
        assert!(matches!(parse_category(text), Err(Error::DanglingMorphism { .. })));
    }

    #[test]
    fn rejects_unknown_section_and_header() {
        let text = "#! ttgeo category v1\n[objects]\nx\n[arrows]\n";
        assert!(matches!(parse_category(text), Err(Error::UnknownSection(_))));
        assert!(matches!(parse_category("[objects]\nx\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_cycle() {
        let text = "#! ttgeo category v1\n[objects]\nx\ny\n[poset]\nx < y\ny < x\n";
        assert!(matches!(parse_category(text), Err(Error::NotAPoset(_))));
    }
}
