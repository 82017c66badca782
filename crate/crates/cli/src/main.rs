mod args;
mod commands;
mod manifest;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::*;
use manifest::{sha256_hex, RunManifest};

fn parse(argv: &[String]) -> Result<Cli, CliError> {
    let full = std::iter::once("cosetsle".to_string()).chain(argv.iter().cloned());
    Cli::try_parse_from(full).map_err(|e| {
        let code = match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.render().to_string(),
        }
    })
}

fn write_outputs(argv: Vec<String>, cmd: &Command, art: &Artifact) -> Result<(), CliError> {
    let out = output_of(cmd);
    match out.and_then(|o| o.out.as_ref()) {
        Some(p) => std::fs::write(p, &art.body)?,
        None => print!("{}", art.body),
    }
    let manifest_path = out.and_then(|o| {
        o.manifest
            .clone()
            .or_else(|| o.out.as_deref().map(RunManifest::path_for))
    });
    if let Some(mp) = manifest_path {
        let m = RunManifest::new(art.command, argv, art.config.clone(), art.seed, &art.inputs, art.body.as_bytes())?;
        std::fs::write(mp, serde_json::to_string_pretty(&m).expect("serializable") + "\n")?;
    }
    Ok(())
}

fn replay(path: &Path) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(path)?;
    let m: RunManifest = serde_json::from_str(&text).map_err(|e| CliError {
        code: EXIT_INVALID,
        message: format!("bad manifest: {e}"),
    })?;
    for (p, digest) in &m.input_digests {
        let now = sha256_hex(&std::fs::read(p)?);
        if &now != digest {
            return Err(CliError {
                code: EXIT_INVALID,
                message: format!("input {p} changed since the recorded run"),
            });
        }
    }
    let mut cli = parse(&m.argv)?;
    if let Some(seed) = m.seed {
        pin_seed(&mut cli.command, seed);
    }
    let art = execute(&cli.command)?;
    let digest = sha256_hex(art.body.as_bytes());
    if digest == m.output_digest {
        println!("reproduced {} ({digest})", m.command);
        Ok(EXIT_OK)
    } else {
        println!("mismatch for {}: recorded {}, got {digest}", m.command, m.output_digest);
        Ok(EXIT_STATISTICAL)
    }
}

fn run(argv: Vec<String>) -> Result<i32, CliError> {
    let cli = parse(&argv)?;
    if let Command::Replay(r) = &cli.command {
        return replay(&r.manifest);
    }
    let art = execute(&cli.command)?;
    write_outputs(argv, &cli.command, &art)?;
    Ok(if art.failed { EXIT_STATISTICAL } else { EXIT_OK })
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let code = match run(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.code == EXIT_OK {
                print!("{}", e.message);
            } else if e.code == EXIT_USAGE {
                eprint!("{}", e.message);
            } else {
                eprintln!("error: {}", e.message.trim_end());
            }
            e.code
        }
    };
    ExitCode::from(code as u8)
}
