use std::io::Write;
use std::process::ExitCode;

use loopforge::cli;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("LOOPFORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli::run(std::env::args_os()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            if e.code == cli::EXIT_PASS {
                print!("{}", e.message);
            } else {
                eprintln!("loopforge: {}", e.message.trim_end());
            }
            ExitCode::from(e.code as u8)
        }
    }
}
