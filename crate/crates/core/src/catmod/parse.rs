//! Module files.
//!
//! ```text
//! #! ttgeo module v1
//! [module]
//! category = chain2.cat
//! field = 2
//! [dims]
//! x = 1
//! y = 1
//! [maps]
//! x<y = [1]
//! ```
//!
//! Matrices are row-major, rows separated by `;`, entries integers or `a/b`.
//! Maps of identities are implicit. A map left out is derived by composing
//! given maps, or is zero when its source or target is zero. `field` is a
//! prime or `Q`; `category` is optional and resolved relative to the file.

use std::fmt::Write as _;
use std::sync::Arc;

use super::FunctorModule;
use crate::error::{Error, Result};
use crate::field::{literal, Field, FieldSpec};
use crate::fincat::parse::sections;
use crate::fincat::FiniteCategory;
use crate::linalg::Matrix;

pub const MODULE_HEADER: &str = "#! ttgeo module v1";

/// A parsed module file, not yet bound to a category or field type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub category_path: Option<String>,
    pub field: FieldSpec,
    pub dims: Vec<(usize, String, usize)>,
    /// `(line, morphism name, rows of literal entries)`.
    pub maps: Vec<(usize, String, Vec<Vec<String>>)>,
}

pub(crate) fn parse_matrix_literal(n: usize, s: &str) -> Result<Vec<Vec<String>>> {
    let body = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(n, "matrix must be written `[a b; c d]`"))?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(body
        .split(';')
        .map(|row| row.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(String::from).collect())
        .collect())
}

pub(crate) fn build_matrix<F: Field>(n: usize, rows: usize, cols: usize, lit: &[Vec<String>]) -> Result<Matrix<F>> {
    if rows == 0 || cols == 0 {
        if lit.iter().any(|r| !r.is_empty()) {
            return Err(Error::parse(n, format!("expected an empty matrix for shape {rows}x{cols}")));
        }
        return Ok(Matrix::zeros(rows, cols));
    }
    if lit.len() != rows || lit.iter().any(|r| r.len() != cols) {
        return Err(Error::parse(n, format!("expected a {rows}x{cols} matrix")));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in lit {
        for e in r {
            data.push(F::parse_literal(e).map_err(|_| Error::parse(n, format!("bad entry `{e}`")))?);
        }
    }
    Ok(Matrix::from_vec(rows, cols, data))
}

pub(crate) fn parse_field(n: usize, s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") || s == "0" {
        return Ok(FieldSpec::Rational);
    }
    let p: u64 = s.trim_start_matches(['F', 'f']).parse().map_err(|_| Error::parse(n, format!("bad field `{s}`")))?;
    FieldSpec::from_characteristic(p).map_err(|_| Error::parse(n, format!("{p} is not prime")))
}

pub fn parse_module(text: &str) -> Result<ModuleSpec> {
    let lines = sections(text, MODULE_HEADER, &["module", "dims", "maps"])?;
    let mut spec = ModuleSpec { category_path: None, field: FieldSpec::Prime(2), dims: Vec::new(), maps: Vec::new() };
    let mut field_seen = false;
    for (n, section, line) in lines {
        let (key, value) = line.split_once('=').ok_or_else(|| Error::parse(n, "expected `key = value`"))?;
        let key = key.trim().to_string();
        match section.as_str() {
            "module" => match key.as_str() {
                "category" => spec.category_path = Some(value.trim().to_string()),
                "field" => {
                    spec.field = parse_field(n, value)?;
                    field_seen = true;
                }
                _ => return Err(Error::parse(n, format!("unknown key `{key}`"))),
            },
            "dims" => {
                let d = value.trim().parse().map_err(|_| Error::parse(n, "bad dimension"))?;
                spec.dims.push((n, key, d));
            }
            _ => spec.maps.push((n, key, parse_matrix_literal(n, value)?)),
        }
    }
    if !field_seen {
        return Err(Error::parse(1, "missing `field` in `[module]`"));
    }
    Ok(spec)
}

impl ModuleSpec {
    /// Binds the spec to `cat`, deriving omitted maps, and validates it.
    pub fn build<F: Field>(&self, cat: Arc<FiniteCategory>) -> Result<FunctorModule<F>> {
        if F::spec() != self.field {
            return Err(Error::FieldMismatch { expected: F::spec().to_string(), found: self.field.to_string() });
        }
        let mut dims = vec![0; cat.object_count()];
        for (n, name, d) in &self.dims {
            let x = cat.object_id(name).ok_or_else(|| Error::parse(*n, format!("unknown object `{name}`")))?;
            dims[x] = *d;
        }
        let mut maps: Vec<Option<Matrix<F>>> = vec![None; cat.morphism_count()];
        for x in 0..cat.object_count() {
            maps[x] = Some(Matrix::identity(dims[x]));
        }
        for (n, name, lit) in &self.maps {
            let f = cat.morphism_id(name).ok_or_else(|| Error::parse(*n, format!("unknown morphism `{name}`")))?;
            if cat.is_identity(f) {
                return Err(Error::parse(*n, "identity maps are implicit"));
            }
            let m = cat.morphism(f);
            maps[f] = Some(build_matrix(*n, dims[m.tgt], dims[m.src], lit)?);
        }
        for (f, m) in cat.morphisms().iter().enumerate() {
            if maps[f].is_none() && (dims[m.src] == 0 || dims[m.tgt] == 0) {
                maps[f] = Some(Matrix::zeros(dims[m.tgt], dims[m.src]));
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (f, g, h) in cat.composable_pairs() {
                if maps[h].is_none() {
                    if let (Some(a), Some(b)) = (&maps[f], &maps[g]) {
                        maps[h] = Some(a.mul(b));
                        changed = true;
                    }
                }
            }
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(f, m)| {
                m.ok_or_else(|| {
                    Error::InvalidModule(format!("no matrix given or derivable for `{}`", cat.morphism(f).name))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FunctorModule::new(cat, dims, maps)
    }
}

pub(crate) fn matrix_literal<F: Field>(m: &Matrix<F>) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|r| m.row(r).iter().map(literal).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

/// Serialises a module, writing only the generating morphisms.
pub fn write_module<F: Field>(m: &FunctorModule<F>, category_path: Option<&str>) -> String {
    let cat = m.category();
    let mut s = String::new();
    let _ = writeln!(s, "{MODULE_HEADER}");
    let _ = writeln!(s, "[module]");
    if let Some(p) = category_path {
        let _ = writeln!(s, "category = {p}");
    }
    let field = match F::spec() {
        FieldSpec::Rational => "Q".to_string(),
        FieldSpec::Prime(p) => p.to_string(),
    };
    let _ = writeln!(s, "field = {field}");
    let _ = writeln!(s, "[dims]");
    for x in 0..cat.object_count() {
        let _ = writeln!(s, "{} = {}", cat.object_name(x), m.dim_at(x));
    }
    let _ = writeln!(s, "[maps]");
    for &f in cat.generating_morphisms() {
        let mo = cat.morphism(f);
        if m.dim_at(mo.src) > 0 && m.dim_at(mo.tgt) > 0 {
            let _ = writeln!(s, "{} = {}", mo.name, matrix_literal(m.map(f)));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, Q};

    fn chain() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::poset(["x", "y", "z"], &[(0, 1), (1, 2)]).unwrap())
    }

    #[test]
    fn derived_composites() {
        let text = "#! ttgeo module v1\n[module]\nfield = 2\n[dims]\nx = 1\ny = 1\nz = 1\n[maps]\nx<y = [1]\ny<z = [1]\n";
        let m = parse_module(text).unwrap().build::<F2>(chain()).unwrap();
        assert_eq!(m, FunctorModule::trivial(chain()));
        let again = parse_module(&write_module(&m, None)).unwrap().build::<F2>(chain()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn rational_entries_and_errors() {
        let text = "#! ttgeo module v1\n[module]\nfield = Q\n[dims]\nx = 2\ny = 1\n[maps]\nx<y = [1/2 -3]\n";
        let m = parse_module(text).unwrap().build::<Q>(chain()).unwrap();
        assert_eq!(m.dims(), &[2, 1, 0]);
        assert!(parse_module(text).unwrap().build::<F2>(chain()).is_err());
        let bad = "#! ttgeo module v1\n[module]\nfield = 2\n[dims]\nx = 1\ny = 1\n[maps]\nx<y = [1 1]\n";
        assert!(parse_module(bad).unwrap().build::<F2>(chain()).is_err());
        let missing = "#! ttgeo module v1\n[module]\nfield = 2\n[dims]\nx = 1\ny = 1\n";
        assert!(matches!(parse_module(missing).unwrap().build::<F2>(chain()), Err(Error::InvalidModule(_))));
    }
}
