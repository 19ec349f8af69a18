//! Complex files.
//!
//! ```text
//! #! ttgeo complex v1
//! [complex]
//! category = chain3.cat
//! field = 2
//! [terms]
//! 0 = p0.mod
//! 1 = k.mod
//! [differentials]
//! 0 x = [1]
//! 0 y = [1]
//! ```
//!
//! `[terms]` maps degrees to module files. A line `n x = [..]` of
//! `[differentials]` gives the component of `d^n` at `x`; omitted components
//! are zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::BoundedComplex;
use crate::catmod::{build_matrix, matrix_literal, parse_field, parse_matrix_literal, FunctorModule, ModuleMap};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::fincat::parse::sections;
use crate::fincat::FiniteCategory;
use crate::linalg::Matrix;

pub const COMPLEX_HEADER: &str = "#! ttgeo complex v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSpec {
    pub category_path: Option<String>,
    pub field: FieldSpec,
    /// `(degree, module file)`, sorted by degree.
    pub terms: Vec<(i32, String)>,
    /// `(line, degree, object, rows of literal entries)`.
    pub differentials: Vec<(usize, i32, String, Vec<Vec<String>>)>,
}

pub fn parse_complex(text: &str) -> Result<ComplexSpec> {
    let lines = sections(text, COMPLEX_HEADER, &["complex", "terms", "differentials"])?;
    let mut spec = ComplexSpec { category_path: None, field: FieldSpec::Prime(2), terms: Vec::new(), differentials: Vec::new() };
    let mut field_seen = false;
    let mut terms = BTreeMap::new();
    for (n, section, line) in lines {
        let (key, value) = line.split_once('=').ok_or_else(|| Error::parse(n, "expected `key = value`"))?;
        let key = key.trim();
        match section.as_str() {
            "complex" => match key {
                "category" => spec.category_path = Some(value.trim().to_string()),
                "field" => {
                    spec.field = parse_field(n, value)?;
                    field_seen = true;
                }
                _ => return Err(Error::parse(n, format!("unknown key `{key}`"))),
            },
            "terms" => {
                let d: i32 = key.parse().map_err(|_| Error::parse(n, format!("bad degree `{key}`")))?;
                if terms.insert(d, value.trim().to_string()).is_some() {
                    return Err(Error::parse(n, format!("degree {d} given twice")));
                }
            }
            _ => {
                let (deg, obj) = key.split_once(char::is_whitespace).ok_or_else(|| Error::parse(n, "expected `degree object = matrix`"))?;
                let d: i32 = deg.parse().map_err(|_| Error::parse(n, format!("bad degree `{deg}`")))?;
                spec.differentials.push((n, d, obj.trim().to_string(), parse_matrix_literal(n, value)?));
            }
        }
    }
    if !field_seen {
        return Err(Error::parse(1, "missing `field` in `[complex]`"));
    }
    spec.terms = terms.into_iter().collect();
    Ok(spec)
}

impl ComplexSpec {
    /// Assembles the complex from already loaded terms, one per entry of
    /// `self.terms`.
    pub fn build<F: Field>(&self, cat: Arc<FiniteCategory>, modules: &[FunctorModule<F>]) -> Result<BoundedComplex<F>> {
        if F::spec() != self.field {
            return Err(Error::FieldMismatch { expected: F::spec().to_string(), found: self.field.to_string() });
        }
        if modules.len() != self.terms.len() {
            return Err(Error::InvalidComplex(format!("{} terms declared, {} loaded", self.terms.len(), modules.len())));
        }
        if self.terms.is_empty() {
            return Ok(BoundedComplex::zero(cat));
        }
        let low = self.terms[0].0;
        let high = self.terms.last().unwrap().0;
        let mut by_degree: BTreeMap<i32, FunctorModule<F>> = BTreeMap::new();
        for ((d, _), m) in self.terms.iter().zip(modules) {
            by_degree.insert(*d, m.clone());
        }
        let term = |d: i32| by_degree.get(&d).cloned().unwrap_or_else(|| FunctorModule::zero(cat.clone()));
        let terms: Vec<FunctorModule<F>> = (low..=high).map(term).collect();
        let mut comps: Vec<Vec<Matrix<F>>> = (low..high)
            .map(|d| {
                let (s, t) = (term(d), term(d + 1));
                (0..cat.object_count()).map(|x| Matrix::zeros(t.dim_at(x), s.dim_at(x))).collect()
            })
            .collect();
        for (n, d, obj, lit) in &self.differentials {
            if *d < low || *d >= high {
                return Err(Error::parse(*n, format!("no differential leaves degree {d}")));
            }
            let x = cat.object_id(obj).ok_or_else(|| Error::parse(*n, format!("unknown object `{obj}`")))?;
            let i = (d - low) as usize;
            comps[i][x] = build_matrix(*n, terms[i + 1].dim_at(x), terms[i].dim_at(x), lit)?;
        }
        let diffs = comps
            .into_iter()
            .enumerate()
            .map(|(i, c)| ModuleMap::new(terms[i].clone(), terms[i + 1].clone(), c))
            .collect::<Result<_>>()?;
        BoundedComplex::new(cat, low, terms, diffs)
    }
}

/// Serialises a complex whose nonzero terms are stored in `term_paths`,
/// one path per degree from `c.low()`.
pub fn write_complex<F: Field>(c: &BoundedComplex<F>, category_path: Option<&str>, term_paths: &[String]) -> String {
    let cat = c.category();
    let mut s = String::new();
    let _ = writeln!(s, "{COMPLEX_HEADER}");
    let _ = writeln!(s, "[complex]");
    if let Some(p) = category_path {
        let _ = writeln!(s, "category = {p}");
    }
    let field = match F::spec() {
        FieldSpec::Rational => "Q".to_string(),
        FieldSpec::Prime(p) => p.to_string(),
    };
    let _ = writeln!(s, "field = {field}");
    let _ = writeln!(s, "[terms]");
    for (d, p) in c.degrees().zip(term_paths) {
        let _ = writeln!(s, "{d} = {p}");
    }
    let _ = writeln!(s, "[differentials]");
    for d in c.low()..c.high() {
        let diff = c.diff(d);
        for x in 0..cat.object_count() {
            let m = &diff.components[x];
            if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                let _ = writeln!(s, "{d} {} = {}", cat.object_name(x), matrix_literal(m));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catmod::{parse_module, write_module};
    use crate::F2;

    #[test]
    fn round_trip() {
        let cat = Arc::new(FiniteCategory::poset(["x", "y"], &[(0, 1)]).unwrap());
        let p = FunctorModule::<F2>::representable(cat.clone(), 0);
        let k = FunctorModule::<F2>::trivial(cat.clone());
        let d = ModuleMap::new(p.clone(), k.clone(), vec![Matrix::identity(1), Matrix::identity(1)]).unwrap();
        let c = BoundedComplex::new(cat.clone(), -1, vec![p.clone(), k.clone()], vec![d]).unwrap();
        let text = write_complex(&c, None, &["p.mod".into(), "k.mod".into()]);
        let spec = parse_complex(&text).unwrap();
        assert_eq!(spec.terms, vec![(-1, "p.mod".to_string()), (0, "k.mod".to_string())]);
        let mods: Vec<FunctorModule<F2>> = [p, k]
            .iter()
            .map(|m| parse_module(&write_module(m, None)).unwrap().build(cat.clone()).unwrap())
            .collect();
        assert_eq!(spec.build(cat.clone(), &mods).unwrap(), c);
        let bad = text.replace("-1 x = [1]\n", "");
        assert!(matches!(parse_complex(&bad).unwrap().build(cat, &mods), Err(Error::NotNatural(_))));
    }
}
