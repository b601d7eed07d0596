use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use mac_core::cli::{exit_code, run, RunConfig};

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("MAC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    let config = RunConfig::parse();
    let stdin = || {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    };
    match run(&config, stdin) {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("mac: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
