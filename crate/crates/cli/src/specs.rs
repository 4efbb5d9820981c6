//! Group and kernel specification strings.

use std::path::Path;
use std::sync::Arc;

use gtfa_core::signalio::{read_csv_kernel, read_csv_signal};
use gtfa_core::transforms::{
    anti_kn_kernel, born_jordan_cyclic_kernel, commutator_kernel, kn_kernel, margin_fix_kernel, spectrogram_kernel,
    wigner_kernel_odd_cyclic,
};
use gtfa_core::{build_cyclic, build_dihedral, build_product, load_group_file, CohenKernel, Group};

use crate::CliError;

const GROUP_PREFIXES: [&str; 4] = ["cyclic:", "dihedral:", "product:", "file:"];

fn parse_order(s: &str, what: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("{what} expects a positive integer, got `{s}`")))
}

/// `cyclic:N`, `dihedral:n`, `product:<a>x<b>` or `file:<path>`.
pub fn parse_group(spec: &str) -> Result<Arc<Group<f64>>, CliError> {
    if let Some(n) = spec.strip_prefix("cyclic:") {
        return Ok(build_cyclic(parse_order(n, "cyclic")?)?);
    }
    if let Some(n) = spec.strip_prefix("dihedral:") {
        return Ok(build_dihedral(parse_order(n, "dihedral")?)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(load_group_file(path)?);
    }
    if let Some(rest) = spec.strip_prefix("product:") {
        // split at the first `x` that starts another group spec and leaves a valid left side
        let mut last_err = None;
        for (i, _) in rest.match_indices('x') {
            let right = &rest[i + 1..];
            if !GROUP_PREFIXES.iter().any(|p| right.starts_with(p)) {
                continue;
            }
            match (parse_group(&rest[..i]), parse_group(right)) {
                (Ok(a), Ok(b)) => return Ok(build_product(&a, &b)?),
                (Err(e), _) | (_, Err(e)) => last_err = Some(e),
            }
        }
        return Err(last_err.unwrap_or_else(|| CliError::Usage(format!("cannot split product spec `{spec}` as <a>x<b>"))));
    }
    Err(CliError::Usage(format!(
        "unknown group spec `{spec}` (expected cyclic:N, dihedral:n, product:<a>x<b> or file:<path>)"
    )))
}

/// Built-in kernel names plus `spectrogram:<window.csv>`,
/// `commutator:<f.csv>:<g.csv>` and `file:<kernel.csv>`.
pub fn parse_kernel(spec: &str, group: &Arc<Group<f64>>) -> Result<CohenKernel<f64>, CliError> {
    let k = match spec {
        "kn" => kn_kernel(group),
        "anti-kn" => anti_kn_kernel(group),
        "born-jordan" => born_jordan_cyclic_kernel(group)?,
        "wigner-odd" => wigner_kernel_odd_cyclic(group)?,
        "margin-fix" => margin_fix_kernel(group),
        _ => {
            if let Some(path) = spec.strip_prefix("spectrogram:") {
                let w = read_csv_signal(Path::new(path), group)?;
                spectrogram_kernel(&w)?
            } else if let Some(rest) = spec.strip_prefix("commutator:") {
                let (f, g) = rest
                    .split_once(':')
                    .ok_or_else(|| CliError::Usage("commutator kernel expects commutator:<f-file>:<g-file>".into()))?;
                commutator_kernel(&read_csv_signal(Path::new(f), group)?, &read_csv_signal(Path::new(g), group)?)?
            } else if let Some(path) = spec.strip_prefix("file:") {
                CohenKernel::new(path, read_csv_kernel(Path::new(path), group)?)
            } else {
                return Err(CliError::Usage(format!(
                    "unknown kernel `{spec}` (expected kn, anti-kn, born-jordan, wigner-odd, margin-fix, \
                     spectrogram:<file>, commutator:<f>:<g> or file:<path>)"
                )));
            }
        }
    };
    Ok(k)
}
