mod args;
mod commands;
mod output;
mod selftest;

use std::process::ExitCode;

use clap::Parser;
use clustercrypt::crypto::CryptoError;

use args::{Cli, Command};

pub const EXIT_SELFTEST: u8 = 1;
pub const EXIT_ENCRYPT: u8 = 2;
pub const EXIT_DECRYPT: u8 = 3;
pub const EXIT_CONFIG: u8 = 64;
pub const EXIT_IO: u8 = 74;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(code: u8, error: impl Into<anyhow::Error>) -> Self {
        Failure { code, error: error.into() }
    }

    pub fn config(error: impl Into<anyhow::Error>) -> Self {
        Failure::new(EXIT_CONFIG, error)
    }

    pub fn io(error: impl Into<anyhow::Error>) -> Self {
        Failure::new(EXIT_IO, error)
    }
}

impl From<CryptoError> for Failure {
    fn from(e: CryptoError) -> Self {
        let code = match e {
            CryptoError::ZeroMessage | CryptoError::EncryptionFailed { .. } => EXIT_ENCRYPT,
            CryptoError::DecryptionFailed { .. } | CryptoError::CorruptOrWrongKey(_) => EXIT_DECRYPT,
            _ => EXIT_CONFIG,
        };
        Failure::new(code, e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    let result = match cli.command {
        Command::Params(a) => commands::params(a, format),
        Command::Keygen(a) => commands::keygen(a, format),
        Command::Encrypt(a) => commands::encrypt(a, format),
        Command::Decrypt(a) => commands::decrypt(a, format),
        Command::Graph(a) => commands::graph(a, format),
        Command::Probe(a) => commands::probe(a, format),
        Command::Selftest(a) => selftest::run(a, format),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
