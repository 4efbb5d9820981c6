//! File formats: mono 16-bit WAV input, CSV tables, plain PGM images.
//!
//! All numbers are written with 17 significant digits in scientific
//! notation, which round-trips `f64` exactly. Files are written to a
//! temporary sibling and renamed into place.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::harmonic::Signal;
use crate::limits::{periodize_values, ZSignal, ZTFGrid};
use crate::quantization::GroupOperator;
use crate::scalar::Real;
use crate::tfplane::{AmbiguityFunction, TFFunction};
use crate::transforms::require_cyclic;
use crate::CMatrix;

/// Header line of kernel files.
pub const KERNEL_HEADER: &str = "xi_index,y_index,row,col,re,im";

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

fn num<T: Real>(v: T) -> String {
    format!("{:.16e}", v.as_f64())
}

fn push_complex<T: Real>(out: &mut String, z: Complex<T>) {
    out.push_str(&num(z.re));
    out.push(',');
    out.push_str(&num(z.im));
    out.push('\n');
}

/// Non-empty data lines with their 1-based line numbers, split on commas.
fn rows(text: &str, skip_header: bool) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .skip(usize::from(skip_header))
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.split(',').map(str::trim).collect()))
        .collect()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn field_count(line: usize, fields: &[&str], want: usize) -> Result<()> {
    if fields.len() != want {
        return Err(parse_err(line, format!("expected {want} fields, found {}", fields.len())));
    }
    Ok(())
}

fn parse_index(line: usize, s: &str, bound: usize, what: &str) -> Result<usize> {
    let v: usize = s.parse().map_err(|_| parse_err(line, format!("bad {what} `{s}`")))?;
    if v >= bound {
        return Err(parse_err(line, format!("{what} {v} out of range 0..{bound}")));
    }
    Ok(v)
}

fn parse_real<T: Real>(line: usize, s: &str) -> Result<T> {
    let v: f64 = s.parse().map_err(|_| parse_err(line, format!("malformed number `{s}`")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("non-finite number `{s}`")));
    }
    Ok(T::lit(v))
}

fn parse_complex<T: Real>(line: usize, re: &str, im: &str) -> Result<Complex<T>> {
    Ok(Complex::new(parse_real(line, re)?, parse_real(line, im)?))
}

/// Marks each slot once; a repeated slot is a parse error.
fn claim(seen: &mut [bool], slot: usize, line: usize) -> Result<()> {
    if std::mem::replace(&mut seen[slot], true) {
        return Err(parse_err(line, "duplicate entry"));
    }
    Ok(())
}

fn expect_rows(found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::RowCount { expected, found });
    }
    Ok(())
}

// ---------------------------------------------------------------- signals

/// `index,re,im`, one row per group element.
pub fn format_csv_signal<T: Real>(u: &Signal<T>) -> String {
    let mut out = String::new();
    for (i, z) in u.values().iter().enumerate() {
        out.push_str(&format!("{i},"));
        push_complex(&mut out, *z);
    }
    out
}

pub fn parse_csv_signal<T: Real>(text: &str, group: &Arc<Group<T>>) -> Result<Signal<T>> {
    let n = group.order();
    let rows = rows(text, false);
    expect_rows(rows.len(), n)?;
    let mut vals = vec![Complex::new(T::zero(), T::zero()); n];
    let mut seen = vec![false; n];
    for (line, f) in rows {
        field_count(line, &f, 3)?;
        let i = parse_index(line, f[0], n, "index")?;
        claim(&mut seen, i, line)?;
        vals[i] = parse_complex(line, f[1], f[2])?;
    }
    Signal::new(group.clone(), vals)
}

pub fn read_csv_signal<T: Real>(path: &Path, group: &Arc<Group<T>>) -> Result<Signal<T>> {
    parse_csv_signal(&fs::read_to_string(path)?, group)
}

pub fn write_csv_signal<T: Real>(path: &Path, u: &Signal<T>) -> Result<()> {
    write_atomic(path, format_csv_signal(u).as_bytes())
}

// ------------------------------------------------- symbols / distributions

/// `x,eta_index,row,col,re,im` for every matrix entry of every block.
pub fn format_csv_symbol<T: Real>(a: &TFFunction<T>) -> String {
    let g = a.group();
    let mut out = String::new();
    for x in 0..g.order() {
        for eta in 0..g.n_irreps() {
            let d = g.dim(eta);
            for (k, z) in a.block(x, eta).iter().enumerate() {
                out.push_str(&format!("{x},{eta},{},{},", k / d, k % d));
                push_complex(&mut out, *z);
            }
        }
    }
    out
}

pub fn parse_csv_symbol<T: Real>(text: &str, group: &Arc<Group<T>>) -> Result<TFFunction<T>> {
    let (n, m) = (group.order(), group.n_irreps());
    let mut a = TFFunction::zeros(group);
    let rows = rows(text, false);
    expect_rows(rows.len(), a.as_slice().len())?;
    let mut seen = vec![false; a.as_slice().len()];
    for (line, f) in rows {
        field_count(line, &f, 6)?;
        let x = parse_index(line, f[0], n, "x")?;
        let eta = parse_index(line, f[1], m, "eta_index")?;
        let d = group.dim(eta);
        let r = parse_index(line, f[2], d, "row")?;
        let c = parse_index(line, f[3], d, "col")?;
        claim(&mut seen, x * group.dims().iter().map(|d| d * d).sum::<usize>() + group.offset(eta) + r * d + c, line)?;
        a.block_mut(x, eta)[r * d + c] = parse_complex(line, f[4], f[5])?;
    }
    Ok(a)
}

pub fn read_csv_symbol<T: Real>(path: &Path, group: &Arc<Group<T>>) -> Result<TFFunction<T>> {
    parse_csv_symbol(&fs::read_to_string(path)?, group)
}

pub fn write_csv_symbol<T: Real>(path: &Path, a: &TFFunction<T>) -> Result<()> {
    write_atomic(path, format_csv_symbol(a).as_bytes())
}

// -------------------------------------------------------------- operators

/// `x,y,re,im` for the integral kernel `K(x,y)`.
pub fn format_csv_operator<T: Real>(b: &GroupOperator<T>) -> String {
    let k = b.kernel();
    let n = k.rows();
    let mut out = String::new();
    for x in 0..n {
        for y in 0..n {
            out.push_str(&format!("{x},{y},"));
            push_complex(&mut out, k[(x, y)]);
        }
    }
    out
}

pub fn parse_csv_operator<T: Real>(text: &str, group: &Arc<Group<T>>) -> Result<GroupOperator<T>> {
    let n = group.order();
    let rows = rows(text, false);
    expect_rows(rows.len(), n * n)?;
    let mut data = vec![Complex::new(T::zero(), T::zero()); n * n];
    let mut seen = vec![false; n * n];
    for (line, f) in rows {
        field_count(line, &f, 4)?;
        let x = parse_index(line, f[0], n, "x")?;
        let y = parse_index(line, f[1], n, "y")?;
        claim(&mut seen, x * n + y, line)?;
        data[x * n + y] = parse_complex(line, f[2], f[3])?;
    }
    GroupOperator::new(group, CMatrix::from_vec(n, n, data))
}

pub fn read_csv_operator<T: Real>(path: &Path, group: &Arc<Group<T>>) -> Result<GroupOperator<T>> {
    parse_csv_operator(&fs::read_to_string(path)?, group)
}

pub fn write_csv_operator<T: Real>(path: &Path, b: &GroupOperator<T>) -> Result<()> {
    write_atomic(path, format_csv_operator(b).as_bytes())
}

// ---------------------------------------------------------------- kernels

/// Ambiguity kernel with header [`KERNEL_HEADER`].
pub fn format_csv_kernel<T: Real>(phi: &AmbiguityFunction<T>) -> String {
    let g = phi.group();
    let mut out = String::from(KERNEL_HEADER);
    out.push('\n');
    for xi in 0..g.n_irreps() {
        let d = g.dim(xi);
        for y in 0..g.order() {
            for (k, z) in phi.block(xi, y).iter().enumerate() {
                out.push_str(&format!("{xi},{y},{},{},", k / d, k % d));
                push_complex(&mut out, *z);
            }
        }
    }
    out
}

pub fn parse_csv_kernel<T: Real>(text: &str, group: &Arc<Group<T>>) -> Result<AmbiguityFunction<T>> {
    let first = text.lines().next().unwrap_or("").trim();
    if first != KERNEL_HEADER {
        return Err(parse_err(1, format!("expected header `{KERNEL_HEADER}`")));
    }
    let (n, m) = (group.order(), group.n_irreps());
    let mut phi = AmbiguityFunction::zeros(group);
    let total = phi.as_slice().len();
    let rows = rows(text, true);
    expect_rows(rows.len(), total)?;
    let mut seen = vec![false; total];
    let stride: usize = group.dims().iter().map(|d| d * d).sum();
    for (line, f) in rows {
        field_count(line, &f, 6)?;
        let xi = parse_index(line, f[0], m, "xi_index")?;
        let y = parse_index(line, f[1], n, "y_index")?;
        let d = group.dim(xi);
        let r = parse_index(line, f[2], d, "row")?;
        let c = parse_index(line, f[3], d, "col")?;
        claim(&mut seen, y * stride + group.offset(xi) + r * d + c, line)?;
        phi.block_mut(xi, y)[r * d + c] = parse_complex(line, f[4], f[5])?;
    }
    Ok(phi)
}

pub fn read_csv_kernel<T: Real>(path: &Path, group: &Arc<Group<T>>) -> Result<AmbiguityFunction<T>> {
    parse_csv_kernel(&fs::read_to_string(path)?, group)
}

pub fn write_csv_kernel<T: Real>(path: &Path, phi: &AmbiguityFunction<T>) -> Result<()> {
    write_atomic(path, format_csv_kernel(phi).as_bytes())
}

// ------------------------------------------------------------------ grids

/// `x,theta_index,re,im` with `x` the integer time.
pub fn format_csv_grid<T: Real>(q: &ZTFGrid<T>) -> String {
    let mut out = String::new();
    for t in 0..q.times {
        for j in 0..q.freqs {
            out.push_str(&format!("{},{j},", q.start + t as i64));
            push_complex(&mut out, q.at(t, j));
        }
    }
    out
}

pub fn write_csv_grid<T: Real>(path: &Path, q: &ZTFGrid<T>) -> Result<()> {
    write_atomic(path, format_csv_grid(q).as_bytes())
}

// -------------------------------------------------------------------- WAV

/// Decoded mono recording.
#[derive(Clone, Debug)]
pub struct WavData<T> {
    pub sample_rate: u32,
    /// Samples in `[−1, 1)`, starting at time 0.
    pub signal: ZSignal<T>,
}

fn le16(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn le32(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

/// Decodes a RIFF/WAVE byte stream holding 16-bit mono PCM.
pub fn parse_wav_mono16<T: Real>(bytes: &[u8]) -> Result<WavData<T>> {
    if bytes.len() < 12 {
        return Err(Error::TruncatedFile);
    }
    if &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::UnsupportedFormat("not a RIFF/WAVE file".into()));
    }
    let mut pos = 12;
    let mut rate = None;
    loop {
        if pos + 8 > bytes.len() {
            return Err(Error::TruncatedFile);
        }
        let id = &bytes[pos..pos + 4];
        let size = le32(bytes, pos + 4) as usize;
        let body = pos + 8;
        if id == b"data" {
            let rate = rate.ok_or_else(|| Error::UnsupportedFormat("data chunk before fmt chunk".into()))?;
            if body + size > bytes.len() || !size.is_multiple_of(2) {
                return Err(Error::TruncatedFile);
            }
            let scale = T::lit(1.0 / 32768.0);
            let values = bytes[body..body + size]
                .chunks_exact(2)
                .map(|c| Complex::new(T::lit(f64::from(i16::from_le_bytes([c[0], c[1]]))) * scale, T::zero()))
                .collect();
            return Ok(WavData { sample_rate: rate, signal: ZSignal::new(0, values) });
        }
        if body + size > bytes.len() {
            return Err(Error::TruncatedFile);
        }
        if id == b"fmt " {
            if size < 16 {
                return Err(Error::TruncatedFile);
            }
            let format = le16(bytes, body);
            let channels = le16(bytes, body + 2);
            let bits = le16(bytes, body + 14);
            if format != 1 {
                return Err(Error::UnsupportedFormat(format!("audio format {format} is not integer PCM")));
            }
            if channels != 1 {
                return Err(Error::UnsupportedFormat(format!("{channels} channels; only mono is read")));
            }
            if bits != 16 {
                return Err(Error::UnsupportedFormat(format!("{bits}-bit samples; only 16-bit is read")));
            }
            rate = Some(le32(bytes, body + 4));
        }
        // chunks are padded to even length
        pos = body + size + (size & 1);
    }
}

pub fn read_wav_mono16<T: Real>(path: &Path) -> Result<WavData<T>> {
    parse_wav_mono16(&fs::read(path)?)
}

/// Folds a finitely supported signal onto the cyclic group by summation.
pub fn periodize<T: Real>(u: &ZSignal<T>, group: &Arc<Group<T>>) -> Result<Signal<T>> {
    let n = require_cyclic(group)?;
    Signal::new(group.clone(), periodize_values(u, n)?)
}

// -------------------------------------------------------------------- PGM

/// Where zero sits on the grey scale. Larger values are always darker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shading {
    /// Zero is mid-grey; the largest magnitude maps to black or white.
    MidgreyZero,
    /// Zero and negatives are white; the maximum is black.
    WhiteZero,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImageSpec {
    pub mode: Shading,
    pub width: usize,
    pub height: usize,
    pub gamma: f64,
}

impl ImageSpec {
    pub fn new(mode: Shading, width: usize, height: usize) -> Self {
        Self { mode, width, height, gamma: 1.0 }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }
}

/// Grey levels for row-major `values`, before any file framing.
pub fn pixels<T: Real>(values: &[T], spec: &ImageSpec) -> Result<Vec<u8>> {
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::InvalidArgument("image dimensions must be positive".into()));
    }
    if values.len() != spec.width * spec.height {
        return Err(Error::DimensionMismatch { expected: spec.width * spec.height, found: values.len() });
    }
    let v: Vec<f64> = values
        .iter()
        .map(|x| {
            let x = x.as_f64();
            if spec.gamma == 1.0 {
                x
            } else {
                x.signum() * x.abs().powf(spec.gamma)
            }
        })
        .collect();
    Ok(match spec.mode {
        Shading::MidgreyZero => {
            let s = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if s == 0.0 {
                vec![128; v.len()]
            } else {
                v.iter().map(|x| (127.5 * (1.0 - (x / s).clamp(-1.0, 1.0))).round() as u8).collect()
            }
        }
        Shading::WhiteZero => {
            let m = v.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
            if m <= 0.0 {
                vec![255; v.len()]
            } else {
                v.iter().map(|x| (255.0 * (1.0 - (x / m).clamp(0.0, 1.0))).round() as u8).collect()
            }
        }
    })
}

/// Plain (ASCII) PGM with maxval 255. Each image row starts a new line and
/// lines are wrapped at 70 characters.
pub fn render_pgm<T: Real>(values: &[T], spec: &ImageSpec) -> Result<String> {
    let px = pixels(values, spec)?;
    let mut out = format!("P2\n{} {}\n255\n", spec.width, spec.height);
    for row in px.chunks(spec.width) {
        let mut line = String::new();
        for p in row {
            let tok = p.to_string();
            if !line.is_empty() && line.len() + 1 + tok.len() > 70 {
                out.push_str(&line);
                out.push('\n');
                line.clear();
            }
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&tok);
        }
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

pub fn write_pgm<T: Real>(path: &Path, values: &[T], spec: &ImageSpec) -> Result<()> {
    write_atomic(path, render_pgm(values, spec)?.as_bytes())
}
