//! Serialization of trajectories and reports.
//!
//! Diagnostics are plain tab-separated text; snapshots use a little-endian
//! binary layout; experiment reports are JSON. Every file embeds the
//! configuration hash so `verify` can re-check provenance.

use std::fs;
use std::io::Read;
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use dispersive::{ExperimentReport, RealField, Trajectory};

use crate::CliError;

/// Snapshot file magic: "dispersive wave snapshot".
pub const SNAPSHOT_MAGIC: [u8; 4] = *b"DWS1";
/// Snapshot format version.
pub const SNAPSHOT_VERSION: u32 = 1;

/// Column order of the diagnostics file; the header line is part of the
/// public contract.
pub const DIAGNOSTICS_HEADER: &str = "time\tHs_norm\tHs_minus_norm\tsup_ux\tmass\tl2\thamiltonian";

/// Write the diagnostics series as tab-separated columns. The first line
/// carries the config hash, the second the fixed header.
pub fn write_diagnostics(path: &Path, traj: &Trajectory, hash_hex: &str) -> Result<(), CliError> {
    let d = &traj.diagnostics;
    let mut text = String::new();
    text.push_str(&format!("# config_hash={hash_hex}\n"));
    text.push_str(DIAGNOSTICS_HEADER);
    text.push('\n');
    for i in 0..d.len() {
        text.push_str(&format!(
            "{:.17e}\t{:.17e}\t{:.17e}\t{:.17e}\t{:.17e}\t{:.17e}\t{:.17e}\n",
            d.times[i],
            d.hs_norm[i],
            d.hs_minus_norm[i],
            d.sup_ux[i],
            d.mass[i],
            d.l2[i],
            d.hamiltonian[i],
        ));
    }
    fs::write(path, text)?;
    Ok(())
}

/// Write one snapshot:
/// magic (4) | version u32 | N u32 | P u32 | time f64 | hash (32) | N samples f64,
/// all little-endian.
pub fn write_snapshot(
    path: &Path,
    field: &RealField,
    time: f64,
    hash: &[u8; 32],
) -> Result<(), CliError> {
    let mut buf: Vec<u8> = Vec::with_capacity(4 + 4 + 4 + 4 + 8 + 32 + 8 * field.samples().len());
    buf.extend_from_slice(&SNAPSHOT_MAGIC);
    buf.write_u32::<LittleEndian>(SNAPSHOT_VERSION)?;
    buf.write_u32::<LittleEndian>(field.grid().len() as u32)?;
    buf.write_u32::<LittleEndian>(field.grid().period_multiplier() as u32)?;
    buf.write_f64::<LittleEndian>(time)?;
    buf.extend_from_slice(hash);
    for &v in field.samples() {
        buf.write_f64::<LittleEndian>(v)?;
    }
    fs::write(path, buf)?;
    Ok(())
}

/// A snapshot read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub n: u32,
    pub period_multiplier: u32,
    pub time: f64,
    pub hash: [u8; 32],
    pub samples: Vec<f64>,
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot, CliError> {
    let mut file = fs::File::open(path)?;
    let mut magic = [0u8; 4];
    file.read_exact(&mut magic)?;
    if magic != SNAPSHOT_MAGIC {
        return Err(CliError::Format(format!("{}: bad magic", path.display())));
    }
    let version = file.read_u32::<LittleEndian>()?;
    if version != SNAPSHOT_VERSION {
        return Err(CliError::Format(format!(
            "{}: unsupported snapshot version {version}",
            path.display()
        )));
    }
    let n = file.read_u32::<LittleEndian>()?;
    let period_multiplier = file.read_u32::<LittleEndian>()?;
    let time = file.read_f64::<LittleEndian>()?;
    let mut hash = [0u8; 32];
    file.read_exact(&mut hash)?;
    let mut samples = Vec::with_capacity(n as usize);
    for _ in 0..n {
        samples.push(file.read_f64::<LittleEndian>()?);
    }
    Ok(Snapshot { n, period_multiplier, time, hash, samples })
}

/// Write an experiment report as pretty JSON (stable key order).
pub fn write_report(path: &Path, report: &ExperimentReport) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Format(e.to_string()))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Re-check the hashes embedded in every artifact of an output directory
/// against the resolved config stored next to them. Returns the list of
/// verified files.
pub fn verify_dir(dir: &Path) -> Result<Vec<String>, CliError> {
    let resolved = dir.join("config.resolved.toml");
    if !resolved.is_file() {
        return Err(CliError::Format(format!(
            "{}: missing config.resolved.toml",
            dir.display()
        )));
    }
    let cfg = crate::config::RunConfig::parse(&fs::read_to_string(&resolved)?)?;
    let expect_hex = cfg.hash_hex();
    let expect_raw = cfg.hash();
    let mut checked = Vec::new();

    let diag = dir.join("diagnostics.tsv");
    if diag.is_file() {
        let mut first = String::new();
        let mut file = fs::File::open(&diag)?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        first.push_str(text.lines().next().unwrap_or(""));
        let want = format!("# config_hash={expect_hex}");
        if first != want {
            return Err(CliError::HashMismatch(format!("{}", diag.display())));
        }
        checked.push("diagnostics.tsv".into());
    }

    let snaps = dir.join("snapshots");
    if snaps.is_dir() {
        let mut entries: Vec<_> = fs::read_dir(&snaps)?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().map(|x| x == "bin").unwrap_or(false))
            .collect();
        entries.sort();
        for path in entries {
            let snap = read_snapshot(&path)?;
            if snap.hash != expect_raw {
                return Err(CliError::HashMismatch(format!("{}", path.display())));
            }
            checked.push(
                path.strip_prefix(dir).unwrap_or(&path).to_string_lossy().into_owned(),
            );
        }
    }

    let report = dir.join("report.json");
    if report.is_file() {
        let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report)?)
            .map_err(|e| CliError::Format(e.to_string()))?;
        if value.get("provenance").and_then(|v| v.as_str()) != Some(expect_hex.as_str()) {
            return Err(CliError::HashMismatch(format!("{}", report.display())));
        }
        checked.push("report.json".into());
    }

    Ok(checked)
}
