//! `spritz` — Spritz stream cipher, sponge hash, and statistical
//! randomness battery on the command line.
//!
//! Exit codes: 0 success, 1 battery verdict Failed, 2 usage error,
//! 3 I/O error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::OsRng;
use rand::RngCore;

use spritz::{length_encoding, Keystream, SpritzState};
use spritz_battery::{
    render_text, BatteryConfig, BatteryReport, GeneratorKind, KeySource, Status,
};

const CHUNK: usize = 64 * 1024;

#[derive(Parser)]
#[command(
    name = "spritz",
    version,
    about = "Spritz stream cipher, sponge hash, and randomness battery",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write raw keystream bytes for a key
    Keystream(KeystreamArgs),
    /// Encrypt a file (byte-wise addition of the keystream)
    Encrypt(CryptArgs),
    /// Decrypt a file (byte-wise subtraction of the keystream)
    Decrypt(CryptArgs),
    /// Hash a file with the sponge construction
    Hash(HashArgs),
    /// Run the statistical randomness battery
    Battery(BatteryArgs),
    /// Re-render a saved battery report (JSON) as the human table
    Report(ReportArgs),
}

/// Exactly one key source must be chosen.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct KeyArgs {
    /// Key bytes as hex
    #[arg(long, value_name = "HEX")]
    key_hex: Option<String>,
    /// Read raw key bytes from a file
    #[arg(long, value_name = "PATH")]
    key_file: Option<PathBuf>,
    /// Generate a fresh 32-byte key (echoed to stderr as hex)
    #[arg(long)]
    random_key: bool,
    /// Continue from a state file written by --save-state
    #[arg(long, value_name = "PATH")]
    resume: Option<PathBuf>,
}

#[derive(Args)]
struct KeystreamArgs {
    /// Number of keystream bytes to produce
    #[arg(short = 'n', long, value_parser = clap::value_parser!(u64).range(1..))]
    length: u64,
    /// Output path ("-" for stdout)
    #[arg(long, default_value = "-", value_name = "PATH")]
    out: PathBuf,
    #[command(flatten)]
    key: KeyArgs,
    /// Write the cipher state after the last byte, for later --resume
    #[arg(long, value_name = "PATH")]
    save_state: Option<PathBuf>,
}

#[derive(Args)]
struct CryptArgs {
    /// Input path ("-" for stdin)
    input: PathBuf,
    /// Output path ("-" for stdout)
    output: PathBuf,
    #[command(flatten)]
    key: KeyArgs,
    /// IV as hex, absorbed stop-separated after the key ("" is a valid,
    /// non-absent IV); incompatible with --resume
    #[arg(long, value_name = "HEX")]
    iv_hex: Option<String>,
    /// Write the cipher state after the last byte, for later --resume
    #[arg(long, value_name = "PATH")]
    save_state: Option<PathBuf>,
}

#[derive(Args)]
struct HashArgs {
    /// Input path ("-" for stdin)
    input: PathBuf,
    /// Digest length in bytes
    #[arg(short = 'r', long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..=1_048_576))]
    length: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorArg {
    Spritz,
    Zero,
    Counter,
}

impl From<GeneratorArg> for GeneratorKind {
    fn from(g: GeneratorArg) -> GeneratorKind {
        match g {
            GeneratorArg::Spritz => GeneratorKind::Spritz,
            GeneratorArg::Zero => GeneratorKind::Zero,
            GeneratorArg::Counter => GeneratorKind::Counter,
        }
    }
}

#[derive(Args)]
struct BatteryArgs {
    /// Number of independent keystreams
    #[arg(long, default_value_t = 64)]
    streams: usize,
    /// Bits per stream (multiple of 8)
    #[arg(long, default_value_t = 1 << 20)]
    stream_bits: u64,
    /// p-samples per test row (reruns use twice this, from reserved data)
    #[arg(long, default_value_t = 32)]
    psamples: usize,
    /// Hex seed for deterministic key derivation; omit for OS entropy
    #[arg(long, value_name = "HEX")]
    seed: Option<String>,
    /// Spritz key length in bytes
    #[arg(long, default_value_t = 32)]
    key_bytes: usize,
    /// Generator under test
    #[arg(long, value_enum, default_value_t = GeneratorArg::Spritz)]
    generator: GeneratorArg,
    /// Write the machine-readable report here
    #[arg(long, value_name = "PATH")]
    json_out: Option<PathBuf>,
    /// Write the human-readable table here instead of stdout
    #[arg(long, value_name = "PATH")]
    text_out: Option<PathBuf>,
    /// Lower weak threshold
    #[arg(long, default_value_t = 0.005)]
    weak_low: f64,
    /// Upper weak threshold
    #[arg(long, default_value_t = 0.995)]
    weak_high: f64,
    /// Lower failure threshold
    #[arg(long, default_value_t = 1e-6)]
    fail_low: f64,
    /// Upper failure threshold
    #[arg(long, default_value_t = 1.0 - 1e-6)]
    fail_high: f64,
}

#[derive(Args)]
struct ReportArgs {
    /// Battery report JSON written by `battery --json-out`
    report: PathBuf,
    /// Also print the sample schedule and superseded first-pass rows
    #[arg(long)]
    audit: bool,
}

enum AppError {
    Usage(String),
    Io(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Usage(msg) | AppError::Io(msg) => f.write_str(msg),
        }
    }
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

fn io_err(context: &str, err: io::Error) -> AppError {
    AppError::Io(format!("{context}: {err}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_thread_pool() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Honors SPRITZ_THREADS for the rayon pool the battery parallelizes over.
fn init_thread_pool() -> Result<(), AppError> {
    match std::env::var("SPRITZ_THREADS") {
        Err(_) => Ok(()),
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| usage(format!("SPRITZ_THREADS must be a positive integer, got {v:?}")))?;
            // A pool may already exist (e.g. under a test harness); that is
            // not a user-visible failure.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Keystream(args) => cmd_keystream(args),
        Command::Encrypt(args) => cmd_crypt(args, Direction::Encrypt),
        Command::Decrypt(args) => cmd_crypt(args, Direction::Decrypt),
        Command::Hash(args) => cmd_hash(args),
        Command::Battery(args) => cmd_battery(args),
        Command::Report(args) => cmd_report(args),
    }
}

// ---------------------------------------------------------------- streams

fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn open_input(path: &Path) -> Result<Box<dyn Read>, AppError> {
    if is_stdio(path) {
        Ok(Box::new(io::stdin().lock()))
    } else {
        let file = fs::File::open(path)
            .map_err(|e| io_err(&format!("opening {}", path.display()), e))?;
        Ok(Box::new(file))
    }
}

fn open_output(path: &Path) -> Result<Box<dyn Write>, AppError> {
    if is_stdio(path) {
        Ok(Box::new(io::stdout().lock()))
    } else {
        let file = fs::File::create(path)
            .map_err(|e| io_err(&format!("creating {}", path.display()), e))?;
        Ok(Box::new(io::BufWriter::new(file)))
    }
}

/// Writes a chunk, reporting `Ok(false)` when the consumer closed the pipe —
/// a streaming producer should stop quietly then, like any Unix filter.
fn write_chunk(out: &mut dyn Write, buf: &[u8]) -> Result<bool, AppError> {
    match out.write_all(buf) {
        Ok(()) => Ok(true),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(false),
        Err(e) => Err(io_err("writing output", e)),
    }
}

fn flush_quietly(out: &mut dyn Write) -> Result<(), AppError> {
    match out.flush() {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(io_err("writing output", e)),
    }
}

/// Prints completed text to stdout, tolerating a closed pipe.
fn print_stdout(text: &str) -> Result<(), AppError> {
    let mut out = io::stdout().lock();
    if write_chunk(&mut out, text.as_bytes())? {
        flush_quietly(&mut out)?;
    }
    Ok(())
}

// ------------------------------------------------------------------- keys

/// Builds the keystream from the chosen key source, applying the IV when
/// given. `--resume` restores a saved state, which is already past any IV.
fn build_keystream(key: &KeyArgs, iv_hex: Option<&str>) -> Result<Keystream, AppError> {
    if let Some(path) = &key.resume {
        if iv_hex.is_some() {
            return Err(usage("--iv-hex cannot be combined with --resume: a saved state is already keyed (and past any IV)"));
        }
        let bytes =
            fs::read(path).map_err(|e| io_err(&format!("reading {}", path.display()), e))?;
        let state = SpritzState::from_bytes(&bytes)
            .map_err(|e| usage(format!("state file {}: {e}", path.display())))?;
        return Ok(Keystream::from_state(state));
    }

    let key_bytes: Vec<u8> = if let Some(h) = &key.key_hex {
        hex::decode(h).map_err(|e| usage(format!("--key-hex: {e}")))?
    } else if let Some(path) = &key.key_file {
        fs::read(path).map_err(|e| io_err(&format!("reading {}", path.display()), e))?
    } else {
        // --random-key (the group guarantees exactly one source is set)
        let mut k = vec![0u8; 32];
        OsRng.fill_bytes(&mut k);
        eprintln!("generated key: {}", hex::encode(&k));
        k
    };

    let result = match iv_hex {
        Some(h) => {
            let iv = hex::decode(h).map_err(|e| usage(format!("--iv-hex: {e}")))?;
            Keystream::with_iv(&key_bytes, &iv)
        }
        None => Keystream::new(&key_bytes),
    };
    result.map_err(|e| usage(e.to_string()))
}

fn save_state(ks: Keystream, path: &Path) -> Result<(), AppError> {
    fs::write(path, ks.into_state().to_bytes())
        .map_err(|e| io_err(&format!("writing {}", path.display()), e))
}

// ------------------------------------------------------------ subcommands

fn cmd_keystream(args: KeystreamArgs) -> Result<ExitCode, AppError> {
    let mut ks = build_keystream(&args.key, None)?;
    let mut out = open_output(&args.out)?;
    let mut buf = [0u8; CHUNK];
    let mut remaining = args.length;
    while remaining > 0 {
        let take = remaining.min(CHUNK as u64) as usize;
        ks.fill(&mut buf[..take]);
        if !write_chunk(out.as_mut(), &buf[..take])? {
            break;
        }
        remaining -= take as u64;
    }
    flush_quietly(out.as_mut())?;
    if let Some(path) = &args.save_state {
        save_state(ks, path)?;
    }
    Ok(ExitCode::SUCCESS)
}

enum Direction {
    Encrypt,
    Decrypt,
}

fn cmd_crypt(args: CryptArgs, dir: Direction) -> Result<ExitCode, AppError> {
    let mut ks = build_keystream(&args.key, args.iv_hex.as_deref())?;
    let mut input = open_input(&args.input)?;
    let mut output = open_output(&args.output)?;
    let mut buf = [0u8; CHUNK];
    loop {
        let n = input.read(&mut buf).map_err(|e| io_err("reading input", e))?;
        if n == 0 {
            break;
        }
        match dir {
            Direction::Encrypt => ks.encrypt_chunk(&mut buf[..n]),
            Direction::Decrypt => ks.decrypt_chunk(&mut buf[..n]),
        }
        if !write_chunk(output.as_mut(), &buf[..n])? {
            break;
        }
    }
    flush_quietly(output.as_mut())?;
    if let Some(path) = &args.save_state {
        save_state(ks, path)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hash(args: HashArgs) -> Result<ExitCode, AppError> {
    let r = args.length as usize;
    let mut input = open_input(&args.input)?;
    // Streamed equivalent of the one-shot hash: absorb chunk by chunk, then
    // the stop symbol and the length commitment, then squeeze.
    let mut state = SpritzState::standard();
    let mut buf = [0u8; CHUNK];
    loop {
        let n = input.read(&mut buf).map_err(|e| io_err("reading input", e))?;
        if n == 0 {
            break;
        }
        state.absorb(&buf[..n]).expect("standard state absorbs any byte string");
    }
    state.absorb_stop();
    state
        .absorb(&length_encoding(r))
        .expect("standard state absorbs any byte string");
    print_stdout(&format!("{}\n", hex::encode(state.squeeze(r))))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_battery(args: BatteryArgs) -> Result<ExitCode, AppError> {
    let key_source = match &args.seed {
        Some(h) => {
            let seed = hex::decode(h).map_err(|e| usage(format!("--seed: {e}")))?;
            KeySource::Seeded(seed)
        }
        None => KeySource::OsEntropy,
    };
    let config = BatteryConfig {
        streams: args.streams,
        stream_bits: args.stream_bits,
        psamples: args.psamples,
        fail_low: args.fail_low,
        fail_high: args.fail_high,
        weak_low: args.weak_low,
        weak_high: args.weak_high,
        key_bytes: args.key_bytes,
        key_source,
        generator: args.generator.into(),
    };

    let report = spritz_battery::run_battery(&config).map_err(|e| usage(e.to_string()))?;

    if let Some(path) = &args.json_out {
        let json = serde_json::to_string_pretty(&report)
            .expect("report serialization is infallible");
        fs::write(path, json).map_err(|e| io_err(&format!("writing {}", path.display()), e))?;
    }
    let text = render_text(&report);
    match &args.text_out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| io_err(&format!("writing {}", path.display()), e))?,
        None => print_stdout(&text)?,
    }

    Ok(if report.overall == Status::Failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_report(args: ReportArgs) -> Result<ExitCode, AppError> {
    let json = fs::read_to_string(&args.report)
        .map_err(|e| io_err(&format!("reading {}", args.report.display()), e))?;
    let report: BatteryReport = serde_json::from_str(&json)
        .map_err(|e| usage(format!("{} is not a battery report: {e}", args.report.display())))?;
    if report.format_version != 1 {
        return Err(usage(format!(
            "unsupported report format_version {}",
            report.format_version
        )));
    }
    let mut text = render_text(&report);
    if args.audit {
        use std::fmt::Write as _;
        let out = &mut text;
        writeln!(out, "\naudit:").unwrap();
        writeln!(
            out,
            "  sample schedule ({} bytes each; first {} = first pass, rest = rerun reserve):",
            report.config.sample_bytes, report.config.psamples
        )
        .unwrap();
        for (j, loc) in report.schedule.iter().enumerate() {
            writeln!(out, "    [{j:>3}] stream {:>3} @ byte {}", loc.stream, loc.offset).unwrap();
        }
        writeln!(out, "  superseded first-pass rows:").unwrap();
        let mut any = false;
        for row in &report.rows {
            if let Some(rerun) = &row.rerun {
                any = true;
                writeln!(
                    out,
                    "    {:<22} tuple {:>2}: p={:.8} {} at {} psamples, rerun -> p={:.8} {}",
                    row.display_name(),
                    row.tuple,
                    rerun.original_p,
                    rerun.original_status,
                    rerun.original_psamples,
                    row.p,
                    row.status
                )
                .unwrap();
            }
        }
        if !any {
            writeln!(out, "    (none)").unwrap();
        }
        writeln!(out, "  row timings:").unwrap();
        for row in &report.rows {
            writeln!(
                out,
                "    {:<22} tuple {:>2}: {:.3}s",
                row.display_name(),
                row.tuple,
                row.elapsed_seconds
            )
            .unwrap();
        }
    }
    print_stdout(&text)?;
    Ok(ExitCode::SUCCESS)
}
