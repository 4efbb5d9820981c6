//! The four-picture pipeline: waveform, Born–Jordan on ℤ, Born–Jordan on
//! the periodized signal, and a Gaussian-window spectrogram.

use std::path::Path;
use std::sync::Arc;

use gtfa_core::limits::{q_z_distribution, ZSignal};
use gtfa_core::signalio::{
    periodize, read_csv_signal, read_wav_mono16, write_csv_signal, write_pgm, ImageSpec, Shading,
};
use gtfa_core::transforms::{born_jordan_distribution_cyclic, spectrogram_distribution};
use gtfa_core::{build_cyclic, Group, Signal, TFFunction};

use crate::args::FiguresArgs;
use crate::CliError;

/// `w(x) ∝ e^{−π(x/σ)²}` on `ℤ/N`, with `x` taken in `(−N/2, N/2]` and
/// unit norm under the Haar probability measure.
pub fn gaussian_window(group: &Arc<Group<f64>>, sigma: f64) -> Result<Signal<f64>, CliError> {
    let n = group
        .cyclic_order()
        .ok_or_else(|| CliError::Usage("the Gaussian window needs a cyclic group".into()))?;
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(CliError::Usage(format!("--sigma must be positive, got {sigma}")));
    }
    let raw: Vec<f64> = (0..n)
        .map(|x| {
            let s = if 2 * x <= n { x as f64 } else { x as f64 - n as f64 };
            (-std::f64::consts::PI * (s / sigma).powi(2)).exp()
        })
        .collect();
    let norm = (raw.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
    Ok(Signal::from_real(group, &raw.iter().map(|v| v / norm).collect::<Vec<_>>())?)
}

fn load(a: &FiguresArgs) -> Result<ZSignal<f64>, CliError> {
    if let Some(p) = &a.wav {
        let wav = read_wav_mono16::<f64>(p)?;
        log::info!("{}: {} samples at {} Hz", p.display(), wav.signal.len(), wav.sample_rate);
        return Ok(wav.signal);
    }
    let p = a.signal.as_ref().ok_or_else(|| CliError::Usage("one of --wav or --signal is required".into()))?;
    let rows = std::fs::read_to_string(p).map_err(gtfa_core::Error::from)?.lines().filter(|l| !l.trim().is_empty()).count();
    if rows == 0 {
        return Err(CliError::Usage(format!("{} holds no samples", p.display())));
    }
    let g = build_cyclic::<f64>(rows)?;
    Ok(ZSignal::new(0, read_csv_signal(p, &g)?.into_values()))
}

/// Real parts with rows η and columns x.
fn real_rows(d: &TFFunction<f64>, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n * n);
    for eta in 0..n {
        for x in 0..n {
            out.push(d.block(x, eta)[0].re);
        }
    }
    out
}

pub(crate) fn run(a: FiguresArgs) -> Result<i32, CliError> {
    let u = load(&a)?;
    if u.is_empty() {
        return Err(CliError::Usage("input signal is empty".into()));
    }
    let len = u.len();
    let n = a.period.unwrap_or(len);
    let m = a.freq_bins.unwrap_or(len);
    if n == 0 || m == 0 {
        return Err(CliError::Usage("--period and --freq-bins must be positive".into()));
    }
    let sigma = a.sigma.unwrap_or(n as f64 / 16.0);
    std::fs::create_dir_all(&a.out_dir).map_err(gtfa_core::Error::from)?;
    let dir: &Path = &a.out_dir;

    let line = build_cyclic::<f64>(len)?;
    write_csv_signal(&dir.join("waveform.csv"), &Signal::new(line, u.values.clone())?)?;

    let qz = q_z_distribution(&u, m, a.axis_fix)?;
    let (h, w, values) = qz.real_image();
    write_pgm(&dir.join("q_z.pgm"), &values, &ImageSpec::new(Shading::MidgreyZero, w, h).with_gamma(a.gamma))?;

    let g = build_cyclic::<f64>(n)?;
    let p = periodize(&u, &g)?;
    let q = born_jordan_distribution_cyclic(&p, &p)?;
    write_pgm(
        &dir.join("q_cyclic.pgm"),
        &real_rows(&q, n),
        &ImageSpec::new(Shading::MidgreyZero, n, n).with_gamma(a.gamma),
    )?;

    let win = gaussian_window(&g, sigma)?;
    let s = spectrogram_distribution(&win, &p, &p)?;
    write_pgm(
        &dir.join("spectrogram.pgm"),
        &real_rows(&s, n),
        &ImageSpec::new(Shading::WhiteZero, n, n).with_gamma(a.gamma),
    )?;
    log::info!("figures written to {}", dir.display());
    Ok(0)
}
