//! Reading input files, with paths inside files resolved relative to the
//! file that names them.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use ttgeo_core::catmod::{parse_module, FunctorModule, ModuleSpec};
use ttgeo_core::dcat::{parse_complex, BoundedComplex, ComplexSpec};
use ttgeo_core::fincat::{parse_category, FiniteCategory};
use ttgeo_core::groupact::{parse_action, TransporterCategory};
use ttgeo_core::{Field, FieldSpec};

use crate::output::{CliError, CliResult};

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn create_dir(path: &Path) -> CliResult<()> {
    std::fs::create_dir_all(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn in_file<T>(path: &Path, r: ttgeo_core::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::File { path: path.to_path_buf(), source })
}

fn sibling(file: &Path, rel: &str) -> PathBuf {
    file.parent().unwrap_or(Path::new(".")).join(rel)
}

pub fn field(s: &str) -> CliResult<FieldSpec> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rational);
    }
    let p: u64 = s.parse().map_err(|_| CliError::Usage(format!("field must be a prime or `Q`, got `{s}`")))?;
    Ok(FieldSpec::from_characteristic(p)?)
}

pub fn category(path: &Path) -> CliResult<Arc<FiniteCategory>> {
    Ok(Arc::new(in_file(path, parse_category(&read(path)?))?))
}

fn category_for(file: &Path, named: Option<&str>, explicit: Option<&Path>) -> CliResult<Arc<FiniteCategory>> {
    match (explicit, named) {
        (Some(p), _) => category(p),
        (None, Some(rel)) => category(&sibling(file, rel)),
        (None, None) => {
            Err(CliError::Usage(format!("{}: no `category` key; pass --category", file.display())))
        }
    }
}

/// A parsed module file and the category it lives over.
pub struct LoadedModule {
    pub path: PathBuf,
    pub spec: ModuleSpec,
    pub cat: Arc<FiniteCategory>,
}

impl LoadedModule {
    pub fn open(path: &Path, explicit: Option<&Path>) -> CliResult<Self> {
        let spec = in_file(path, parse_module(&read(path)?))?;
        let cat = category_for(path, spec.category_path.as_deref(), explicit)?;
        Ok(LoadedModule { path: path.to_path_buf(), spec, cat })
    }

    pub fn build<F: Field>(&self, cat: &Arc<FiniteCategory>) -> CliResult<FunctorModule<F>> {
        in_file(&self.path, self.spec.build::<F>(cat.clone()))
    }
}

/// Two module files over one category and one field.
pub fn module_pair(a: &Path, b: &Path, explicit: Option<&Path>) -> CliResult<(LoadedModule, LoadedModule)> {
    let (l, r) = (LoadedModule::open(a, explicit)?, LoadedModule::open(b, explicit)?);
    if l.cat != r.cat {
        return Err(ttgeo_core::Error::CategoryMismatch.into());
    }
    if l.spec.field != r.spec.field {
        return Err(
            ttgeo_core::Error::FieldMismatch { expected: l.spec.field.to_string(), found: r.spec.field.to_string() }.into()
        );
    }
    Ok((l, r))
}

/// A parsed complex file, its category and its term files.
pub struct LoadedComplex {
    pub path: PathBuf,
    pub spec: ComplexSpec,
    pub cat: Arc<FiniteCategory>,
    terms: Vec<LoadedModule>,
}

impl LoadedComplex {
    pub fn open(path: &Path, explicit: Option<&Path>) -> CliResult<Self> {
        let spec = in_file(path, parse_complex(&read(path)?))?;
        let cat = category_for(path, spec.category_path.as_deref(), explicit)?;
        let terms = spec
            .terms
            .iter()
            .map(|(_, rel)| {
                let p = sibling(path, rel);
                let spec = in_file(&p, parse_module(&read(&p)?))?;
                Ok(LoadedModule { path: p, spec, cat: cat.clone() })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(LoadedComplex { path: path.to_path_buf(), spec, cat, terms })
    }

    pub fn build<F: Field>(&self, cat: &Arc<FiniteCategory>) -> CliResult<BoundedComplex<F>> {
        let modules = self.terms.iter().map(|t| t.build::<F>(cat)).collect::<CliResult<Vec<_>>>()?;
        in_file(&self.path, self.spec.build::<F>(cat.clone(), &modules))
    }
}

pub fn complex_pair(a: &Path, b: &Path, explicit: Option<&Path>) -> CliResult<(LoadedComplex, LoadedComplex)> {
    let (l, r) = (LoadedComplex::open(a, explicit)?, LoadedComplex::open(b, explicit)?);
    if l.cat != r.cat {
        return Err(ttgeo_core::Error::CategoryMismatch.into());
    }
    if l.spec.field != r.spec.field {
        return Err(
            ttgeo_core::Error::FieldMismatch { expected: l.spec.field.to_string(), found: r.spec.field.to_string() }.into()
        );
    }
    Ok((l, r))
}

/// The transporter category of an action file, over the poset it names or
/// over `poset` when given.
pub fn transporter(action: &Path, poset: Option<&Path>) -> CliResult<TransporterCategory> {
    let spec = in_file(action, parse_action(&read(action)?))?;
    let p = match (poset, spec.poset_path.as_deref()) {
        (Some(p), _) => category(p)?,
        (None, Some(rel)) => category(&sibling(action, rel))?,
        (None, None) => return Err(CliError::Usage(format!("{}: no `poset` key; pass --poset", action.display()))),
    };
    let gp = in_file(action, spec.resolve(p))?;
    in_file(action, TransporterCategory::build(gp))
}
