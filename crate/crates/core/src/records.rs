//! On-disk formats: versioned text records for equilibrium measures and
//! recurrence tables, a compact binary record for sample batches, CSV exports
//! and the cache directory.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::equilibrium::{EquilibriumMeasure, Potential};
use crate::error::{Error, Result};
use crate::mc::{Beta, Histogram, SampleBatch};
use crate::orthopoly::RecurrenceTable;

pub const MEASURE_MAGIC: &str = "rmtlab-measure";
pub const RECURRENCE_MAGIC: &str = "rmtlab-recurrence";
pub const TEXT_VERSION: u32 = 1;
pub const BATCH_MAGIC: &[u8; 4] = b"RMTB";
pub const BATCH_VERSION: u16 = 1;
const BATCH_HEADER: usize = 4 + 2 + 1 + 1 + 4 + 4 + 8 + 4;
/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "RMT_CACHE_DIR";

fn join(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| format!("{x:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

/// Line-oriented `key values...` reader.
struct Fields<'a> {
    lines: std::str::Lines<'a>,
}

impl<'a> Fields<'a> {
    fn new(text: &'a str, magic: &str) -> Result<Self> {
        let mut lines = text.lines();
        let head = lines.next().ok_or_else(|| fmt_err("empty record"))?;
        let mut parts = head.split_whitespace();
        if parts.next() != Some(magic) {
            return Err(fmt_err(format!("expected a {magic} record")));
        }
        let version: u32 = parts
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| fmt_err("missing version"))?;
        if version != TEXT_VERSION {
            return Err(fmt_err(format!("unsupported record version {version}")));
        }
        Ok(Self { lines })
    }

    fn take(&mut self, key: &str) -> Result<Vec<&'a str>> {
        let line = self
            .lines
            .next()
            .ok_or_else(|| fmt_err(format!("missing field {key}")))?;
        let mut parts = line.split_whitespace();
        if parts.next() != Some(key) {
            return Err(fmt_err(format!("expected field {key}, found {line:?}")));
        }
        Ok(parts.collect())
    }

    fn floats(&mut self, key: &str) -> Result<Vec<f64>> {
        self.take(key)?
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| fmt_err(format!("bad number {s:?} in {key}")))
            })
            .collect()
    }

    fn float(&mut self, key: &str) -> Result<f64> {
        let v = self.floats(key)?;
        if v.len() != 1 {
            return Err(fmt_err(format!("{key} expects one value")));
        }
        Ok(v[0])
    }
}

fn write_potential(out: &mut String, v: &Potential) {
    let _ = writeln!(out, "potential {}", join(&v.coefficients));
    let _ = writeln!(out, "hard_edge {}", u8::from(v.hard_edge));
    let _ = writeln!(out, "alpha {}", v.singularity_alpha);
}

fn read_potential(f: &mut Fields) -> Result<Potential> {
    let coefficients = f.floats("potential")?;
    let hard = f.float("hard_edge")? != 0.0;
    let alpha = f.float("alpha")?;
    Potential::new(coefficients, hard, alpha)
}

/// Text record: potential, endpoints, `h` coefficients, moments and `ℓ`.
pub fn measure_to_text(mu: &EquilibriumMeasure) -> String {
    let mut out = format!("{MEASURE_MAGIC} {TEXT_VERSION}\n");
    write_potential(&mut out, &mu.potential);
    let _ = writeln!(out, "support {} {}", mu.support.0, mu.support.1);
    let _ = writeln!(out, "h {}", join(&mu.h));
    let _ = writeln!(out, "moments {}", join(&mu.moments));
    let _ = writeln!(out, "ell {}", mu.ell);
    let _ = writeln!(out, "iterations {}", mu.iterations);
    out
}

/// Rebuilds the measure from its moments and checks it against the stored `h` and `ℓ`.
pub fn measure_from_text(text: &str) -> Result<EquilibriumMeasure> {
    let mut f = Fields::new(text, MEASURE_MAGIC)?;
    let v = read_potential(&mut f)?;
    let support = match f.floats("support")?[..] {
        [a, b] => (a, b),
        _ => return Err(fmt_err("support expects two values")),
    };
    let h = f.floats("h")?;
    let moments = f.floats("moments")?;
    let ell = f.float("ell")?;
    let iterations = f.float("iterations")? as usize;
    let mu = EquilibriumMeasure::assemble(&v, moments, support, iterations);
    let scale = h.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    let h_ok = mu.h.len() == h.len()
        && mu
            .h
            .iter()
            .zip(&h)
            .all(|(x, y)| (x - y).abs() <= 1e-12 * scale);
    if !h_ok || (mu.ell - ell).abs() > 1e-10 * (1.0 + ell.abs()) {
        return Err(fmt_err(
            "stored h or ℓ disagrees with the reconstructed measure",
        ));
    }
    Ok(mu)
}

/// Text record of a recurrence table; norms are stored as `log γ²`.
pub fn recurrence_to_text(t: &RecurrenceTable, v: &Potential) -> String {
    let mut out = format!("{RECURRENCE_MAGIC} {TEXT_VERSION}\n");
    write_potential(&mut out, v);
    let _ = writeln!(out, "n_param {}", t.n_param);
    let _ = writeln!(out, "n_max {}", t.n_max);
    let _ = writeln!(out, "window {} {}", t.window.0, t.window.1);
    let _ = writeln!(out, "a {}", join(&t.a));
    let _ = writeln!(out, "b {}", join(&t.b));
    let _ = writeln!(out, "log_gamma_sq {}", join(&t.log_gamma_sq));
    out
}

pub fn recurrence_from_text(text: &str) -> Result<(RecurrenceTable, Potential)> {
    let mut f = Fields::new(text, RECURRENCE_MAGIC)?;
    let v = read_potential(&mut f)?;
    let n_param = f.float("n_param")?;
    let n_max = f.float("n_max")? as usize;
    let window = match f.floats("window")?[..] {
        [a, b] => (a, b),
        _ => return Err(fmt_err("window expects two values")),
    };
    let a = f.floats("a")?;
    let b = f.floats("b")?;
    let log_gamma_sq = f.floats("log_gamma_sq")?;
    if [a.len(), b.len(), log_gamma_sq.len()]
        .iter()
        .any(|&l| l != n_max + 1)
    {
        return Err(fmt_err(format!(
            "coefficient arrays must have n_max + 1 = {} entries",
            n_max + 1
        )));
    }
    Ok((
        RecurrenceTable {
            n_max,
            n_param,
            a,
            b,
            log_gamma_sq,
            window,
        },
        v,
    ))
}

/// Binary batch record: `RMTB`, u16 version, u8 beta, u8 pad, u32 n, u32 N,
/// u64 seed, u32 count, then `count·n` little-endian f64 values.
pub fn write_batch<W: Write>(batch: &SampleBatch, mut w: W) -> Result<()> {
    let as_u32 =
        |x: usize, what: &str| u32::try_from(x).map_err(|_| fmt_err(format!("{what} too large")));
    let mut buf = Vec::with_capacity(BATCH_HEADER + 8 * batch.n * batch.count());
    buf.extend_from_slice(BATCH_MAGIC);
    buf.extend_from_slice(&BATCH_VERSION.to_le_bytes());
    buf.push(batch.beta.as_u8());
    buf.push(0);
    buf.extend_from_slice(&as_u32(batch.n, "n")?.to_le_bytes());
    buf.extend_from_slice(&as_u32(batch.n_param, "N")?.to_le_bytes());
    buf.extend_from_slice(&batch.seed.to_le_bytes());
    buf.extend_from_slice(&as_u32(batch.count(), "count")?.to_le_bytes());
    for set in &batch.eigenvalue_sets {
        if set.len() != batch.n {
            return Err(fmt_err("eigenvalue set length differs from n"));
        }
        set.iter()
            .for_each(|x| buf.extend_from_slice(&x.to_le_bytes()));
    }
    w.write_all(&buf).map_err(|e| fmt_err(e.to_string()))
}

pub fn read_batch<R: Read>(mut r: R) -> Result<SampleBatch> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)
        .map_err(|e| fmt_err(e.to_string()))?;
    if buf.len() < BATCH_HEADER || &buf[..4] != BATCH_MAGIC {
        return Err(fmt_err("not an RMTB record"));
    }
    let u32_at = |i: usize| u32::from_le_bytes(buf[i..i + 4].try_into().unwrap()) as usize;
    let version = u16::from_le_bytes([buf[4], buf[5]]);
    if version != BATCH_VERSION {
        return Err(fmt_err(format!("unsupported batch version {version}")));
    }
    let beta = Beta::from_u8(buf[6]).map_err(|e| fmt_err(e.to_string()))?;
    let (n, n_param) = (u32_at(8), u32_at(12));
    let seed = u64::from_le_bytes(buf[16..24].try_into().unwrap());
    let count = u32_at(24);
    let payload = &buf[BATCH_HEADER..];
    if payload.len() != 8 * n * count {
        return Err(fmt_err(format!(
            "payload has {} bytes, expected {}",
            payload.len(),
            8 * n * count
        )));
    }
    let values: Vec<f64> = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let eigenvalue_sets = if n == 0 {
        vec![Vec::new(); count]
    } else {
        values.chunks(n).map(<[f64]>::to_vec).collect()
    };
    Ok(SampleBatch {
        beta,
        n,
        n_param,
        seed,
        eigenvalue_sets,
    })
}

/// CSV with columns `set,index,eigenvalue`.
pub fn batch_csv(batch: &SampleBatch) -> String {
    let mut out = String::from("set,index,eigenvalue\n");
    for (s, set) in batch.eigenvalue_sets.iter().enumerate() {
        for (i, x) in set.iter().enumerate() {
            let _ = writeln!(out, "{s},{i},{x}");
        }
    }
    out
}

/// CSV with columns `bin_center,density`.
pub fn histogram_csv(h: &Histogram) -> String {
    let mut out = String::from("bin_center,density\n");
    for (c, d) in h.centers().iter().zip(&h.density) {
        let _ = writeln!(out, "{c},{d}");
    }
    out
}

/// Cache directory from the environment, if set.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|s| !s.is_empty())
        .map(PathBuf::from)
}

/// File name keyed by the exact bit patterns of the potential and extra parameters.
pub fn cache_key(kind: &str, v: &Potential, extra: &[f64]) -> String {
    let bits = v
        .coefficients
        .iter()
        .chain(std::iter::once(&v.singularity_alpha))
        .chain(extra);
    let hex: Vec<String> = bits.map(|x| format!("{:016x}", x.to_bits())).collect();
    format!("{kind}-{}-{}.txt", u8::from(v.hard_edge), hex.join("_"))
}

pub fn read_cached(dir: &Path, key: &str) -> Option<String> {
    std::fs::read_to_string(dir.join(key)).ok()
}

/// Writes through a temporary file so concurrent readers never see a partial record.
pub fn write_cached(dir: &Path, key: &str, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| fmt_err(e.to_string()))?;
    let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, text).map_err(|e| fmt_err(e.to_string()))?;
    std::fs::rename(&tmp, dir.join(key)).map_err(|e| fmt_err(e.to_string()))
}
