use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pairstego::image::load_ppm_as_gray;
use pairstego::method::{capacity, embed, extract};
use pairstego::metrics::{format_table, quality, write_csv};
use pairstego::{
    comparison_report, frame_payload, hybrid_capacity, load_pgm, save_pgm, CodecOptions,
    ComparisonRow, Method, PixelSelector, RangeTable, StegoError,
};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "pairstego",
    version,
    about = "Hide data in grayscale PGM images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a payload file into a cover image.
    Embed {
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        payload: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover the payload from a stego image.
    Extract {
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long)]
        stego: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the capacity of an image for a method.
    Capacity {
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long, alias = "image")]
        cover: PathBuf,
        /// Seed of the hybrid dry run.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print MSE and PSNR between two images.
    Quality {
        #[arg(long, alias = "original")]
        cover: PathBuf,
        #[arg(long)]
        stego: PathBuf,
    },
    /// Compare all methods over every PGM in a directory.
    Bench {
        dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the CSV here and print a table; without it the CSV goes to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Convert a binary PPM to a grayscale PGM.
    Gray {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CodecArgs {
    #[arg(long)]
    method: Method,
    /// Pixel selector for glm: `all` or `stride:K:OFF`.
    #[arg(long)]
    selector: Option<PixelSelector>,
    /// Range table file for pvd and hybrid, one `lower upper` line per range.
    #[arg(long)]
    range_table: Option<PathBuf>,
}

const DEFAULT_SEED: u64 = 0;

struct Failure {
    code: u8,
    message: String,
}

impl From<StegoError> for Failure {
    fn from(err: StegoError) -> Self {
        let code = match err {
            StegoError::CapacityExceeded { .. } | StegoError::PayloadTooLarge(_) => 2,
            StegoError::MissingHeader { .. } | StegoError::TruncatedPayload { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> CmdResult {
    fs::write(path, bytes).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

impl CodecArgs {
    fn options(&self) -> Result<CodecOptions, Failure> {
        let mut opts = CodecOptions::default();
        if let Some(selector) = self.selector {
            if self.method != Method::Glm {
                return Err(usage(format!("--selector is not used by {}", self.method)));
            }
            opts.selector = selector;
        }
        if let Some(path) = &self.range_table {
            if self.method == Method::Glm {
                return Err(usage("--range-table is not used by glm"));
            }
            let text = String::from_utf8(read_file(path)?)
                .map_err(|_| usage(format!("{}: not valid UTF-8", path.display())))?;
            opts.table = text.parse::<RangeTable>()?;
        }
        Ok(opts)
    }
}

fn cmd_embed(codec: &CodecArgs, cover: &Path, payload: &Path, out: &Path) -> CmdResult {
    let opts = codec.options()?;
    if same_file(cover, out) {
        return Err(usage("--out must differ from --cover"));
    }
    let image = load_pgm(cover)?;
    let mut bits = frame_payload(&read_file(payload)?)?;
    let (stego, report) = embed(codec.method, &image, &mut bits, &opts)?;
    save_pgm(&stego, out)?;
    println!("{report}");
    Ok(())
}

fn cmd_extract(codec: &CodecArgs, stego: &Path, out: &Path) -> CmdResult {
    let opts = codec.options()?;
    if same_file(stego, out) {
        return Err(usage("--out must differ from --stego"));
    }
    let image = load_pgm(stego)?;
    let payload = extract(codec.method, &image, &opts)?;
    write_file(out, &payload)?;
    println!("extracted {} bytes", payload.len());
    Ok(())
}

fn cmd_capacity(codec: &CodecArgs, cover: &Path, seed: Option<u64>) -> CmdResult {
    let opts = codec.options()?;
    if seed.is_some() && codec.method != Method::Hybrid {
        return Err(usage(format!("--seed is not used by {}", codec.method)));
    }
    let image = load_pgm(cover)?;
    if codec.method == Method::Hybrid {
        let seed = seed.unwrap_or(DEFAULT_SEED);
        let est = hybrid_capacity(&image, &opts.table, seed);
        println!("bits: {}", est.total());
        println!("bytes: {}", est.total() / 8);
        println!("pvd bits: {}", est.pvd_bits);
        println!("glm bits: {}", est.glm_bits);
        println!("seed: {seed}");
    } else {
        let bits = capacity(codec.method, &image, &opts, DEFAULT_SEED);
        println!("bits: {bits}");
        println!("bytes: {}", bits / 8);
    }
    Ok(())
}

fn cmd_quality(cover: &Path, stego: &Path) -> CmdResult {
    let report = quality(&load_pgm(cover)?, &load_pgm(stego)?)?;
    println!("mse: {:.6}", report.mse);
    println!("psnr: {}", report.psnr);
    Ok(())
}

fn cmd_bench(dir: &Path, seed: u64, csv: Option<&Path>) -> CmdResult {
    let entries = fs::read_dir(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension()
                .is_some_and(|ext| ext.eq_ignore_ascii_case("pgm"))
        })
        .collect();
    paths.sort();

    let opts = CodecOptions::default();
    let per_image: Vec<Option<Vec<ComparisonRow>>> = paths
        .par_iter()
        .map(|path| {
            let name = path.file_stem().unwrap_or_default().to_string_lossy();
            let rows = load_pgm(path)
                .and_then(|img| comparison_report(&name, &img, &Method::ALL, seed, &opts));
            match rows {
                Ok(rows) => Some(rows),
                Err(e) => {
                    eprintln!("skipping {}: {e}", path.display());
                    None
                }
            }
        })
        .collect();
    let mut rows: Vec<ComparisonRow> = per_image.into_iter().flatten().flatten().collect();
    if rows.is_empty() {
        return Err(usage(format!(
            "no readable PGM images in {}",
            dir.display()
        )));
    }
    rows.sort_by(|a, b| (&a.image, a.method).cmp(&(&b.image, b.method)));

    match csv {
        Some(path) => {
            let file =
                fs::File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            write_csv(&rows, file)?;
            print!("{}", format_table(&rows));
        }
        None => write_csv(&rows, std::io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_gray(input: &Path, out: &Path) -> CmdResult {
    if same_file(input, out) {
        return Err(usage("--out must differ from --in"));
    }
    let image = load_ppm_as_gray(input)?;
    save_pgm(&image, out)?;
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Embed {
            codec,
            cover,
            payload,
            out,
        } => cmd_embed(codec, cover, payload, out),
        Command::Extract { codec, stego, out } => cmd_extract(codec, stego, out),
        Command::Capacity { codec, cover, seed } => cmd_capacity(codec, cover, *seed),
        Command::Quality { cover, stego } => cmd_quality(cover, stego),
        Command::Bench { dir, seed, csv } => cmd_bench(dir, *seed, csv.as_deref()),
        Command::Gray { input, out } => cmd_gray(input, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            // --help and --version
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let text = err.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
