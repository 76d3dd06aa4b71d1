use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use maskmark_core::attacks::AttackSpec;
use maskmark_core::codec::{embed, extract, EmbedOptions, DEFAULT_STRENGTH_FLOOR};
use maskmark_core::metrics::{psnr, ssim, SsimParams};
use maskmark_core::raster_io::{
    load_image, load_logo, read_sideinfo, save_image, save_logo, write_sideinfo, Depth, MaskManifest,
};
use maskmark_core::strength_map::{ClassMaskEntry, StrengthParams};
use maskmark_core::Logo;
use maskmark_cli::config::{parse_attack, DEFAULT_K_ALPHA};
use maskmark_cli::corpus::{fixture_classes, load_aligned_mask, load_host, write_fixtures};
use maskmark_cli::{calibrate_floor, exit, exit_code, report, sweep_k, BenchConfig, ClassSpec, PartialFailure};

#[derive(Parser)]
#[command(name = "maskmark", version, about = "Blind ROI-aware DWT/DCT image watermarking")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Embed a logo into a host image.
    Embed(EmbedArgs),
    /// Recover the logo from a watermarked image.
    Extract(ExtractArgs),
    /// Apply one attack to an image.
    Attack(AttackArgs),
    /// Robustness table over a corpus.
    Report(ReportArgs),
    /// Mean PSNR/SSIM per k_alpha over a corpus.
    SweepK(BenchArgs),
    /// Write the built-in fixture scenes and masks.
    Fixtures(FixturesArgs),
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    host: Option<PathBuf>,
    /// name=<s>,mask=<path>,coeff=<c>; repeatable.
    #[arg(long = "class")]
    classes: Vec<ClassSpec>,
    /// Mask manifest naming the host and its masks.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Coefficient for classes taken from a manifest.
    #[arg(long, default_value_t = 1.0)]
    coeff: f64,
    /// Logo file (four lines of 0/1); default logo when omitted.
    #[arg(long)]
    logo: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_K_ALPHA)]
    k_alpha: f64,
    #[arg(long, default_value_t = DEFAULT_STRENGTH_FLOOR)]
    strength_floor: f64,
    #[arg(long)]
    out: PathBuf,
    /// Side-information output; defaults to <out>.side.
    #[arg(long)]
    side: Option<PathBuf>,
    #[arg(long, default_value_t = 16, value_parser = depth_bits)]
    depth: u32,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    image: PathBuf,
    #[arg(long)]
    side: PathBuf,
    /// Recovered logo; printed to stdout when omitted.
    #[arg(long)]
    logo_out: Option<PathBuf>,
    /// Per-slot diagnostics CSV.
    #[arg(long)]
    slots_csv: Option<PathBuf>,
    /// Reference logo; prints BER and NC against it.
    #[arg(long)]
    expect: Option<PathBuf>,
}

#[derive(Args)]
struct AttackArgs {
    /// gaussian, salt_pepper, median3, histeq or jpeg.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    variance: Option<f64>,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    quality: Option<u8>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 16, value_parser = depth_bits)]
    depth: u32,
}

#[derive(Args)]
struct BenchArgs {
    /// TOML config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long = "class")]
    classes: Vec<ClassSpec>,
    #[arg(long)]
    k_alpha: Option<f64>,
    /// Comma-separated k values.
    #[arg(long, value_delimiter = ',')]
    k_grid: Option<Vec<f64>>,
    #[arg(long)]
    strength_floor: Option<f64>,
    /// Attack list, e.g. gaussian:0.01,jpeg:90,median3.
    #[arg(long, value_delimiter = ',')]
    attacks: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    #[arg(long)]
    threads: Option<usize>,
    /// CSV output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    bench: BenchArgs,
    /// Per-image trial CSV.
    #[arg(long)]
    trials: Option<PathBuf>,
    /// Raise the strength floor until every row passes (cap 0.15).
    #[arg(long)]
    calibrate: bool,
}

#[derive(Args)]
struct FixturesArgs {
    #[arg(long)]
    out: PathBuf,
    /// Also write a config.toml for report/sweep-k.
    #[arg(long)]
    config: bool,
}

fn depth_bits(s: &str) -> Result<u32, String> {
    match s {
        "8" => Ok(8),
        "16" => Ok(16),
        _ => Err("depth must be 8 or 16".into()),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn validation(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(maskmark_cli::ValidationError(msg.into()))
}

fn cmd_embed(a: EmbedArgs) -> Result<()> {
    let mut classes = a.classes;
    let host_path = match (&a.manifest, a.host) {
        (Some(m), host) => {
            let man = MaskManifest::read(m)?;
            for (name, path) in &man.masks {
                classes.push(ClassSpec {
                    name: name.clone(),
                    mask: path.display().to_string(),
                    coeff: a.coeff,
                });
            }
            host.unwrap_or(man.image)
        }
        (None, Some(h)) => h,
        (None, None) => return Err(validation("either --host or --manifest is required")),
    };
    let (host, size) = load_host(&host_path)?;
    let entries = classes
        .iter()
        .map(|c| {
            let mask = load_aligned_mask(Path::new(&c.mask), size)?;
            Ok(ClassMaskEntry::new(c.name.clone(), &mask, c.coeff)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let params = StrengthParams::new(a.k_alpha, entries)?;
    let logo = match &a.logo {
        Some(p) => load_logo(p)?,
        None => Logo::default(),
    };
    let opts = EmbedOptions {
        strength_floor: a.strength_floor,
    };
    let marked = embed(&host, &params, &logo, &opts)?;
    let side = a.side.unwrap_or_else(|| {
        let mut s = a.out.clone().into_os_string();
        s.push(".side");
        s.into()
    });
    save_image(&marked.watermarked, &a.out, Depth::from_bits(a.depth)?)?;
    write_sideinfo(&marked.side_info, &side)?;
    let stored = load_image(&a.out)?;
    println!("blocks {:?}", marked.side_info.blocks);
    println!("psnr {:.4}", psnr(&host, &stored)?);
    println!("ssim {:.6}", ssim(&host, &stored, &SsimParams::default())?);
    Ok(())
}

fn cmd_extract(a: ExtractArgs) -> Result<()> {
    let side = read_sideinfo(&a.side)?;
    let image = load_image(&a.image)?;
    let got = extract(&image, &side)?;
    match &a.logo_out {
        Some(p) => save_logo(&got.logo, p)?,
        None => print!("{}", got.logo.to_text()),
    }
    if let Some(p) = &a.slots_csv {
        let mut s = String::from("slot,block,subband,row,col,logo_bit,raw_bit,agreed_bit,votes_one,votes_zero\n");
        for (i, slot) in got.plan.slots().iter().enumerate() {
            let ones = got.ones[slot.bit];
            s += &format!(
                "{i},{},{},{},{},{},{},{},{ones},{}\n",
                got.plan.block_of(slot),
                slot.subband.name(),
                slot.row,
                slot.col,
                slot.bit,
                got.raw_bits[i],
                got.logo.bit(slot.bit),
                maskmark_core::codec::REDUNDANCY as u8 - ones,
            );
        }
        fs::write(p, s).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = &a.expect {
        let want = load_logo(p)?;
        println!("ber {:.6}", maskmark_core::metrics::ber(&want, &got.logo));
        let nc = maskmark_core::metrics::nc_normalized(&want, &got.logo).unwrap_or(0.0);
        println!("nc {nc:.6}");
    }
    Ok(())
}

fn cmd_attack(a: AttackArgs) -> Result<()> {
    let text = match a.kind.as_str() {
        "gaussian" => format!("gaussian:{}", a.variance.ok_or_else(|| validation("gaussian needs --variance"))?),
        "salt_pepper" => match a.density {
            Some(d) => format!("salt_pepper:{d}"),
            None => "salt_pepper".into(),
        },
        "jpeg" => format!("jpeg:{}", a.quality.ok_or_else(|| validation("jpeg needs --quality"))?),
        other => other.to_owned(),
    };
    let spec: AttackSpec = parse_attack(&text, a.seed).map_err(|e| validation(e.to_string()))?;
    let out = spec.apply(&load_image(&a.input)?)?;
    save_image(&out, &a.output, Depth::from_bits(a.depth)?)?;
    Ok(())
}

fn bench_config(a: &BenchArgs) -> Result<BenchConfig> {
    let mut cfg = match &a.config {
        Some(p) => BenchConfig::load(p)?,
        None => BenchConfig::default(),
    };
    if let Some(c) = &a.corpus {
        cfg.corpus = c.clone();
    }
    if !a.classes.is_empty() {
        cfg.classes = a.classes.clone();
    }
    if let Some(v) = a.k_alpha {
        cfg.k_alpha = v;
    }
    if let Some(v) = &a.k_grid {
        cfg.k_grid = v.clone();
    }
    if let Some(v) = a.strength_floor {
        cfg.strength_floor = v;
    }
    if let Some(v) = &a.attacks {
        cfg.attacks = v.clone();
    }
    if let Some(v) = &a.seeds {
        cfg.seeds = v.clone();
    }
    if let Some(v) = a.threads {
        cfg.threads = v;
    }
    if cfg.corpus.as_os_str().is_empty() {
        return Err(validation("no corpus given (--corpus or config file)"));
    }
    Ok(cfg)
}

fn cmd_report(a: ReportArgs) -> Result<()> {
    let mut cfg = bench_config(&a.bench)?;
    let rep = if a.calibrate {
        let cal = calibrate_floor(&cfg)?;
        for (floor, ok) in &cal.steps {
            eprintln!("floor {floor:.2}: {}", if *ok { "pass" } else { "fail" });
        }
        if !cal.converged {
            eprintln!("calibration did not converge by the cap");
        }
        cfg.strength_floor = cal.floor;
        cal.report
    } else {
        report(&cfg)?
    };
    write_out(a.bench.out.as_deref(), &rep.to_csv(&cfg))?;
    if let Some(p) = &a.trials {
        write_out(Some(p), &rep.trials_csv(&cfg))?;
    }
    if !rep.failures.is_empty() {
        return Err(anyhow!(PartialFailure(rep.failures.len())));
    }
    Ok(())
}

fn cmd_sweep(a: BenchArgs) -> Result<()> {
    let cfg = bench_config(&a)?;
    let sw = sweep_k(&cfg)?;
    write_out(a.out.as_deref(), &sw.to_csv(&cfg))?;
    if !sw.failures.is_empty() {
        return Err(anyhow!(PartialFailure(sw.failures.len())));
    }
    Ok(())
}

fn cmd_fixtures(a: FixturesArgs) -> Result<()> {
    for p in write_fixtures(&a.out)? {
        println!("{}", p.display());
    }
    if a.config {
        let mut s = String::from("corpus = \".\"\n");
        for c in fixture_classes() {
            s += &format!("\n[[class]]\nname = \"{}\"\nmask = \"{}\"\ncoeff = {:?}\n", c.name, c.mask, c.coeff);
        }
        let p = a.out.join("config.toml");
        fs::write(&p, s).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::VALIDATION as u8 } else { exit::OK as u8 });
        }
    };
    let res = match cli.cmd {
        Cmd::Embed(a) => cmd_embed(a),
        Cmd::Extract(a) => cmd_extract(a),
        Cmd::Attack(a) => cmd_attack(a),
        Cmd::Report(a) => cmd_report(a),
        Cmd::SweepK(a) => cmd_sweep(a),
        Cmd::Fixtures(a) => cmd_fixtures(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("maskmark: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
