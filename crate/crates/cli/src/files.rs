//! Loading and writing the JSON file formats.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use fuzzy_prokhorov::io::{MeasureFile, SpaceFile, SpaceRef};
use fuzzy_prokhorov::{FuzzySpace, Measure};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write `{}`", path.display()))
}

pub fn load_space(path: &Path) -> Result<Arc<FuzzySpace>> {
    let file = SpaceFile::parse(&read(path)?).with_context(|| format!("in `{}`", path.display()))?;
    let space = file.into_space().with_context(|| format!("in `{}`", path.display()))?;
    Ok(Arc::new(space))
}

/// Loads a measure and resolves its labels against `space`. A `space` entry
/// inside the measure file (a path relative to the measure file, or an
/// inline space) must describe the same space.
pub fn load_measure(path: &Path, space: &Arc<FuzzySpace>) -> Result<Measure> {
    let file = MeasureFile::parse(&read(path)?).with_context(|| format!("in `{}`", path.display()))?;
    if let Some(declared) = &file.space {
        let declared = match declared {
            SpaceRef::Path(p) => {
                let base = path.parent().unwrap_or(Path::new("."));
                load_space(&base.join(p))?
            }
            SpaceRef::Inline(inline) => Arc::new(
                inline.clone().into_space().with_context(|| format!("inline space in `{}`", path.display()))?,
            ),
        };
        if *declared != **space {
            bail!("`{}`: field `space` names a different space than the one given", path.display());
        }
    }
    file.to_measure(space.clone()).with_context(|| format!("field `weights` in `{}`", path.display()))
}

/// Ambient labels: a JSON array of strings, or one label per line with blank
/// lines and `#` comments skipped.
pub fn load_labels(path: &Path) -> Result<Vec<String>> {
    let text = read(path)?;
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(&text).with_context(|| format!("`{}` is not a JSON array of labels", path.display()));
    }
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}
