//! File formats: field snapshots (JSON) and CSV tables.
//!
//! Snapshot layout: a JSON object
//! `{"n", "box_length", "time", "layout": "row-major, component-minor", "psi"}`
//! where `psi` is a flat array of `[re, im]` pairs ordered by point
//! `(ix·n + iy)·n + iz`, then component `x, y, z`. `E = Re ψ`, `B = −Im ψ`.
//!
//! CSV floats are written with 17 significant digits so they round-trip.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ComplexVectorField, HelicitySpectrum};
use crate::grid::Grid;

pub const SNAPSHOT_LAYOUT: &str = "row-major, component-minor";

/// A field at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub time: f64,
    pub psi: ComplexVectorField,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SnapshotFile {
    n: usize,
    box_length: f64,
    time: f64,
    layout: String,
    psi: Vec<[f64; 2]>,
}

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn snapshot_to_json(s: &Snapshot) -> String {
    let g = s.psi.grid();
    let file = SnapshotFile {
        n: g.n(),
        box_length: g.box_length(),
        time: s.time,
        layout: SNAPSHOT_LAYOUT.to_string(),
        psi: s.psi.data().iter().flatten().map(|c| [c.re, c.im]).collect(),
    };
    serde_json::to_string(&file).expect("plain data serializes")
}

pub fn snapshot_from_json(text: &str, path: &Path) -> Result<Snapshot> {
    let corrupt = |reason: String| Error::CorruptSnapshot {
        path: path.to_path_buf(),
        reason,
    };
    let file: SnapshotFile = serde_json::from_str(text).map_err(|e| corrupt(e.to_string()))?;
    if file.layout != SNAPSHOT_LAYOUT {
        return Err(corrupt(format!("unsupported layout {:?}", file.layout)));
    }
    let grid = Grid::new(file.n, file.box_length).map_err(|e| corrupt(e.to_string()))?;
    if file.psi.len() != 3 * grid.len() {
        return Err(corrupt(format!("expected {} values, found {}", 3 * grid.len(), file.psi.len())));
    }
    if file.psi.iter().flatten().any(|x| !x.is_finite()) || !file.time.is_finite() {
        return Err(corrupt("non-finite value".into()));
    }
    let data = file
        .psi
        .chunks_exact(3)
        .map(|p| std::array::from_fn(|c| Complex64::new(p[c][0], p[c][1])))
        .collect();
    let psi = ComplexVectorField::from_data(grid, data).map_err(|e| corrupt(e.to_string()))?;
    Ok(Snapshot { time: file.time, psi })
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    snapshot_from_json(&text, path)
}

/// Writes `contents` to a temporary sibling and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

pub fn write_snapshot(path: &Path, s: &Snapshot) -> Result<()> {
    write_atomic(path, &snapshot_to_json(s))
}

pub const SPECTRUM_HEADER: &str = "mode_x,mode_y,mode_z,sigma,energy";

pub fn spectrum_csv(spec: &HelicitySpectrum) -> String {
    let mut out = String::from(SPECTRUM_HEADER);
    out.push('\n');
    for b in &spec.bins {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            b.mode[0],
            b.mode[1],
            b.mode[2],
            b.helicity.as_i8(),
            fmt_f64(b.energy)
        );
    }
    out
}
