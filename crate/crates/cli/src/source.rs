//! Input resolution: loop tables from files or the catalog, designs and
//! rectangle dumps from files.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use loopcosets::bol::Rectangle;
use loopcosets::designs::IncidenceStructure;
use loopcosets::io;
use loopcosets::loops::{catalog, LoopTable, Subloop};

/// Loads a loop from `catalog:NAME`, an existing file path, or a bare
/// catalog name — checked in that order, so files shadow catalog names.
pub fn load_loop(spec: &str) -> Result<LoopTable> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok(catalog::by_name(name)?);
    }
    let path = Path::new(spec);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return Ok(io::parse_loop(&text).with_context(|| format!("parsing {spec}"))?);
    }
    catalog::by_name(spec).map_err(|_| {
        anyhow::anyhow!("{spec}: no such file, and not a catalog name (see `catalog list`)")
    })
}

/// The subloop generated by the given elements.
pub fn close_subloop<'a>(q: &'a LoopTable, generators: &[usize]) -> Result<Subloop<'a>> {
    if let Some(&g) = generators.iter().find(|&&g| g >= q.order()) {
        bail!("subloop generator {g} is outside 0..{}", q.order());
    }
    Ok(q.subloop_closure(generators))
}

pub fn load_design(path: &Path) -> Result<IncidenceStructure> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(io::parse_design(&text).with_context(|| format!("parsing {}", path.display()))?)
}

/// Rectangles from a single dump file, or from every `.rect` file in a
/// directory (sorted by file name, the order `--dump-rects` wrote them).
pub fn load_rectangles(path: &Path) -> Result<Vec<Rectangle>> {
    let mut files = Vec::new();
    if path.is_dir() {
        for entry in fs::read_dir(path).with_context(|| format!("reading {}", path.display()))? {
            let file = entry?.path();
            if file.extension().is_some_and(|ext| ext == "rect") {
                files.push(file);
            }
        }
        files.sort();
        if files.is_empty() {
            bail!("{}: no .rect files in the directory", path.display());
        }
    } else {
        files.push(path.to_path_buf());
    }
    files
        .iter()
        .map(|file| {
            let text = fs::read_to_string(file)
                .with_context(|| format!("reading {}", file.display()))?;
            Ok(io::parse_rectangle(&text)
                .with_context(|| format!("parsing {}", file.display()))?)
        })
        .collect()
}
