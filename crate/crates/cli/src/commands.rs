use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use gtfa_core::properties::{check_all, format_g17, PropertyReport, PROPERTY_NAMES};
use gtfa_core::quantization::{dequantize, quantize};
use gtfa_core::reconstruct::{class_distance, phase_retrieve};
use gtfa_core::signalio::{
    read_csv_operator, read_csv_signal, read_csv_symbol, write_atomic, write_csv_operator, write_csv_signal,
    write_csv_symbol, write_pgm, ImageSpec,
};
use gtfa_core::transforms::{born_jordan_distribution_cyclic, cohen_transform};
use gtfa_core::{Group, TFFunction};

use crate::args::{Command, QuantizeArgs, ReconstructArgs, TransformArgs, VerifyArgs};
use crate::specs::{parse_group, parse_kernel};
use crate::{figures, CliError};

pub(crate) fn dispatch(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Transform(a) => transform(a),
        Command::Verify(a) => verify(a),
        Command::Quantize(a) => quantize_cmd(a),
        Command::Dequantize(a) => dequantize_cmd(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Figures(a) => figures::run(a),
    }
}

fn transform(a: TransformArgs) -> Result<i32, CliError> {
    let g = parse_group(&a.gk.group)?;
    let k = parse_kernel(&a.gk.kernel, &g)?;
    let u = read_csv_signal(&a.input, &g)?;
    let v = match &a.second {
        Some(p) => read_csv_signal(p, &g)?,
        None => u.clone(),
    };
    let d = if a.gk.kernel == "born-jordan" {
        born_jordan_distribution_cyclic(&u, &v)?
    } else {
        cohen_transform(&k, &u, &v)?
    };
    write_csv_symbol(&a.out, &d)?;
    log::info!("wrote {}", a.out.display());
    if let Some(mode) = a.pgm {
        let path = a.pgm_out.clone().unwrap_or_else(|| a.out.with_extension("pgm"));
        let (w, h, values) = trace_image(&d, &g);
        write_pgm(&path, &values, &ImageSpec::new(mode.into(), w, h).with_gamma(a.gamma))?;
        log::info!("wrote {}", path.display());
    }
    Ok(0)
}

/// `Re tr D(x, η)` with one row per irrep and one column per group element.
fn trace_image(d: &TFFunction<f64>, g: &Arc<Group<f64>>) -> (usize, usize, Vec<f64>) {
    let (w, h) = (g.order(), g.n_irreps());
    let mut values = Vec::with_capacity(w * h);
    for eta in 0..h {
        let dim = g.dim(eta);
        for x in 0..w {
            let b = d.block(x, eta);
            values.push((0..dim).map(|i| b[i * dim + i].re).sum());
        }
    }
    (w, h, values)
}

fn verify(a: VerifyArgs) -> Result<i32, CliError> {
    for name in &a.require {
        if !PROPERTY_NAMES.contains(&name.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown property `{name}` (known: {})",
                PROPERTY_NAMES.join(", ")
            )));
        }
    }
    let g = parse_group(&a.gk.group)?;
    let k = parse_kernel(&a.gk.kernel, &g)?;
    let reports = check_all(&k)?;
    for r in &reports {
        println!("{r}");
    }
    if let Some(path) = &a.csv {
        write_atomic(path, reports_csv(&reports).as_bytes())?;
    }
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| a.require.iter().any(|n| n == r.name) && !r.holds)
        .map(|r| r.name)
        .collect();
    if failed.is_empty() {
        Ok(0)
    } else {
        eprintln!("required properties fail: {}", failed.join(", "));
        Ok(1)
    }
}

fn reports_csv(reports: &[PropertyReport]) -> String {
    let mut s = String::from(PropertyReport::CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

fn quantize_cmd(a: QuantizeArgs) -> Result<i32, CliError> {
    let g = parse_group(&a.gk.group)?;
    let k = parse_kernel(&a.gk.kernel, &g)?;
    let sym = read_csv_symbol(&a.input, &g)?;
    write_csv_operator(&a.out, &quantize(&k, &sym)?)?;
    Ok(0)
}

fn dequantize_cmd(a: QuantizeArgs) -> Result<i32, CliError> {
    let g = parse_group(&a.gk.group)?;
    let k = parse_kernel(&a.gk.kernel, &g)?;
    let op = read_csv_operator(&a.input, &g)?;
    write_csv_symbol(&a.out, &dequantize(&k, &op)?)?;
    Ok(0)
}

fn reconstruct(a: ReconstructArgs) -> Result<i32, CliError> {
    let g = parse_group(&a.group)?;
    if g.cyclic_order().is_none() {
        return Err(CliError::Usage(format!("reconstruct needs a cyclic group, got `{}`", a.group)));
    }
    let q = read_csv_symbol(&a.input, &g)?;
    let reference = a.reference.as_deref().map(|p| read_csv_signal(p, &g)).transpose()?;
    let (u, info) = phase_retrieve(&q, a.tol_zero)?;
    write_csv_signal(&a.out, &u)?;
    let residual = born_jordan_distribution_cyclic(&u, &u)?.max_diff(&q);
    let mut report = String::new();
    let _ = writeln!(report, "pivot={}", info.pivot);
    let _ = writeln!(report, "pivot_magnitude={}", format_g17(info.pivot_magnitude));
    let _ = writeln!(report, "islands={}", info.islands);
    let _ = writeln!(report, "all_zero={}", info.all_zero);
    let _ = writeln!(report, "distribution_residual={}", format_g17(residual));
    if let Some(r) = &reference {
        let _ = writeln!(report, "class_distance={}", format_g17(class_distance(r, &u)));
    }
    if info.all_zero {
        report.push_str("note: every time-margin sample is below the zero threshold; wrote the zero signal\n");
    } else if info.islands > 1 {
        report.push_str("note: zero samples split the signal into islands; their relative phases are not determined\n");
    }
    emit_report(a.report.as_deref(), &report)?;
    Ok(0)
}

fn emit_report(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(())
}


