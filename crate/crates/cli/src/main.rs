use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Ok(v) = std::env::var("GTFA_THREADS") {
        match v.trim().parse::<usize>() {
            // 0 keeps rayon's default of one thread per core
            Ok(n) => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    log::warn!("could not configure thread pool: {e}");
                }
            }
            Err(_) => {
                eprintln!("error: GTFA_THREADS must be a non-negative integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    ExitCode::from(gtfa_cli::run(std::env::args_os()) as u8)
}
