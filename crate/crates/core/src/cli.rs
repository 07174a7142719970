//! Command-line front end. The `sosemanuk` binary is a thin wrapper around
//! [`run`], which takes its I/O handles explicitly so it can be driven from
//! tests.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchConfig};
use crate::cipher::{CipherKey, Sosemanuk};
use crate::kat::{self, KatEntry};

#[derive(Parser, Debug)]
#[command(name = "sosemanuk", version, about = "Sosemanuk stream cipher tool")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct KeyIv {
    /// Key as hex (16 to 32 bytes).
    #[arg(long, conflicts_with = "key_file", required_unless_present = "key_file")]
    key: Option<String>,
    /// File holding the key as hex text.
    #[arg(long)]
    key_file: Option<PathBuf>,
    /// IV as hex (exactly 16 bytes).
    #[arg(long, conflicts_with = "iv_file", required_unless_present = "iv_file")]
    iv: Option<String>,
    /// File holding the IV as hex text.
    #[arg(long)]
    iv_file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum StreamFormat {
    Hex,
    Raw,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ReportFormat {
    Table,
    Kv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print keystream bytes.
    Keystream {
        #[command(flatten)]
        kiv: KeyIv,
        /// Number of bytes.
        #[arg(long)]
        len: usize,
        #[arg(long, value_enum, default_value = "hex")]
        format: StreamFormat,
    },
    /// XOR a file (or stdin) with the keystream.
    #[command(visible_alias = "decrypt")]
    Encrypt {
        #[command(flatten)]
        kiv: KeyIv,
        /// Input file; stdin when omitted or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output file; stdout when omitted or `-`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the full intermediate-value trace for the first 160 bytes.
    Trace {
        #[command(flatten)]
        kiv: KeyIv,
    },
    /// Write known-answer records.
    KatEmit {
        /// Emit one record for this key (needs --iv).
        #[arg(long, requires = "iv")]
        key: Option<String>,
        #[arg(long, requires = "key")]
        iv: Option<String>,
        /// Number of generated records when no key is given.
        #[arg(long, default_value_t = 8)]
        count: usize,
        /// Seed (hex, 16 to 32 bytes) for generated records.
        #[arg(long, default_value = "00000000000000000000000000000000")]
        seed: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a known-answer file; exits nonzero if any record fails.
    KatVerify {
        /// KAT file; stdin when omitted or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Measure throughput.
    Bench {
        /// Seconds per workload.
        #[arg(long, default_value_t = 2.0)]
        duration: f64,
        /// Scale time and agility memory down by this factor (0, 1].
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Nominal CPU frequency in Hz, enables cycles/byte.
        #[arg(long)]
        cpu_hz: Option<f64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: ReportFormat,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cipher(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{} of {} KAT entries failed", .0, .1)]
    KatFailed(usize, usize),
}

fn io_err(path: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}

fn decode_hex(what: &str, s: &str) -> Result<Vec<u8>, CliError> {
    hex::decode(s.trim()).map_err(|e| CliError::Usage(format!("bad {what} hex: {e}")))
}

fn hex_arg(what: &str, inline: &Option<String>, file: &Option<PathBuf>) -> Result<Vec<u8>, CliError> {
    match (inline, file) {
        (Some(h), _) => decode_hex(what, h),
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(io_err(p.display().to_string()))?;
            decode_hex(what, &text)
        }
        (None, None) => Err(CliError::Usage(format!("missing --{what}"))),
    }
}

fn instance(kiv: &KeyIv) -> Result<Sosemanuk, CliError> {
    let key = hex_arg("key", &kiv.key, &kiv.key_file)?;
    let iv = hex_arg("iv", &kiv.iv, &kiv.iv_file)?;
    Ok(Sosemanuk::with_key_iv(&key, &iv)?)
}

fn is_stdio(p: &Option<PathBuf>) -> bool {
    p.as_ref().is_none_or(|p| p.as_os_str() == "-")
}

fn generated_entries(seed: &[u8], count: usize) -> Result<Vec<KatEntry>, CliError> {
    // Keys and IVs are drawn from the cipher's own keystream under the seed.
    let mut src = Sosemanuk::with_key_iv(seed, &[0u8; 16])?;
    (0..count)
        .map(|i| {
            let key_len = 16 + (i % 17);
            let key = src.keystream(key_len);
            let iv = src.keystream(16);
            Ok(KatEntry::generate(&key, &iv)?)
        })
        .collect()
}

fn execute(
    cli: Cli,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let out_err = |e| CliError::Io { path: "<stdout>".into(), source: e };
    match cli.command {
        Command::Keystream { kiv, len, format } => {
            let bytes = instance(&kiv)?.keystream(len);
            match format {
                StreamFormat::Hex => writeln!(stdout, "{}", hex::encode(bytes)),
                StreamFormat::Raw => stdout.write_all(&bytes),
            }
            .map_err(out_err)?;
        }
        Command::Encrypt { kiv, input, output } => {
            let mut cipher = instance(&kiv)?;
            let mut data = Vec::new();
            if is_stdio(&input) {
                stdin.read_to_end(&mut data).map_err(io_err("<stdin>"))?;
            } else {
                let p = input.unwrap();
                data = fs::read(&p).map_err(io_err(p.display().to_string()))?;
            }
            cipher.apply_keystream(&mut data);
            if is_stdio(&output) {
                stdout.write_all(&data).map_err(out_err)?;
            } else {
                let p = output.unwrap();
                fs::write(&p, &data).map_err(io_err(p.display().to_string()))?;
            }
        }
        Command::Trace { kiv } => {
            let key = hex_arg("key", &kiv.key, &kiv.key_file)?;
            let iv = hex_arg("iv", &kiv.iv, &kiv.iv_file)?;
            let trace = kat::emit_trace(&key, &iv)?;
            write!(stdout, "{trace}").map_err(out_err)?;
        }
        Command::KatEmit { key, iv, count, seed, output } => {
            let entries = match (key, iv) {
                (Some(k), Some(v)) => vec![KatEntry::generate(&decode_hex("key", &k)?, &decode_hex("iv", &v)?)?],
                _ => {
                    let seed = decode_hex("seed", &seed)?;
                    if CipherKey::new(&seed).is_err() {
                        return Err(CliError::Usage("--seed must be 16 to 32 bytes".into()));
                    }
                    generated_entries(&seed, count)?
                }
            };
            let text = kat::kat_to_string(&entries);
            match output {
                Some(p) => fs::write(&p, text).map_err(io_err(p.display().to_string()))?,
                None => stdout.write_all(text.as_bytes()).map_err(out_err)?,
            }
        }
        Command::KatVerify { input } => {
            let mut text = String::new();
            if is_stdio(&input) {
                stdin.read_to_string(&mut text).map_err(io_err("<stdin>"))?;
            } else {
                let p = input.unwrap();
                text = fs::read_to_string(&p).map_err(io_err(p.display().to_string()))?;
            }
            let entries = kat::parse_kat(&text)?;
            let report = kat::verify_kat(&entries);
            writeln!(stdout, "{report}").map_err(out_err)?;
            if !report.all_passed() {
                return Err(CliError::KatFailed(report.failures(), entries.len()));
            }
        }
        Command::Bench { duration, scale, cpu_hz, threads, format } => {
            if duration.is_nan() || duration <= 0.0 || !(scale > 0.0 && scale <= 1.0) || threads == 0 {
                return Err(CliError::Usage(
                    "--duration must be positive, --scale in (0, 1], --threads at least 1".into(),
                ));
            }
            let cfg = BenchConfig {
                duration: Duration::from_secs_f64(duration),
                cpu_hz,
                threads,
                ..BenchConfig::default()
            }
            .scaled(scale);
            let report = run_bench(&cfg);
            match format {
                ReportFormat::Table => writeln!(stdout, "{report}"),
                ReportFormat::Kv => write!(stdout, "{}", report.to_key_value()),
            }
            .map_err(out_err)?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit status: 0 on success, 1 on failure, 2 on usage
/// errors.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            // --help and --version are successful exits printed to stdout.
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli, stdin, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                CliError::Usage(_) | CliError::Cipher(crate::Error::InvalidKey { .. })
                | CliError::Cipher(crate::Error::InvalidIv { .. }) => 2,
                _ => 1,
            }
        }
    }
}
