//! Command-line interface: one subcommand per pipeline, deterministic output.
//!
//! Defaults may come from a `key=value` config file (`--config`); explicit
//! flags always win. `HEIGHTLAB_WORKERS` seeds the worker count when neither
//! a flag nor a config key sets it. Identical inputs produce byte-identical
//! output.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::bifurcation::{self, ParamGrid};
use crate::degeneration::{self, GridSpec, MarkedLift};
use crate::dynamics;
use crate::error::{Error, Result};
use crate::family::{self, RationalMapFamily};
use crate::output;
use crate::parse::{parse_family, parse_point};
use crate::point::ProjPointK;

#[derive(Parser)]
#[command(name = "heightlab", version, about = "Heights, degeneration, and bifurcation for families of rational maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical-height enclosure of a marked point (default --nmax 12).
    Height(Opts),
    /// Exact forward orbit with degrees, drops, and cycle detection.
    Orbit(Opts),
    /// Preperiodic / positive-height / undetermined trichotomy.
    Classify(Opts),
    /// Resultant and the degenerate places of the family.
    Resultant(Opts),
    /// Orders of vanishing a_n at t = 0 for the lift given by --point.
    Degenerate(Opts),
    /// Escape-rate grid G_n on an annulus (--grid "r_in,r_out,_,_,n_theta,n_r").
    Escape(Opts),
    /// Activity map of a marked point over a parameter rectangle.
    Activity(Opts),
    /// Verified roots of the (n, m) collision equations from --pairs.
    PreperiodicParams(Opts),
    /// Preperiodic-parameter density report over --pairs.
    Density(Opts),
}

impl Command {
    fn opts(&self) -> &Opts {
        match self {
            Command::Height(o)
            | Command::Orbit(o)
            | Command::Classify(o)
            | Command::Resultant(o)
            | Command::Degenerate(o)
            | Command::Escape(o)
            | Command::Activity(o)
            | Command::PreperiodicParams(o)
            | Command::Density(o) => o,
        }
    }
}

#[derive(Args, Default)]
struct Opts {
    /// Family expression, e.g. "z^2 + t".
    #[arg(long, allow_hyphen_values = true)]
    family: Option<String>,
    /// Read the family expression from a file instead.
    #[arg(long, value_name = "PATH")]
    family_file: Option<PathBuf>,
    /// Marked point: a rational expression in t, or "inf".
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Iteration cap for orbits, heights, and classification.
    #[arg(long)]
    nmax: Option<usize>,
    /// Depth N for degenerate/escape; activity iteration cap.
    #[arg(long)]
    iters: Option<usize>,
    /// "x0,y0,x1,y1,W,H"; escape reads it as "r_in,r_out,_,_,n_theta,n_r".
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Activity derivative threshold; collision tolerance for preperiodic-params.
    #[arg(long, allow_negative_numbers = true)]
    threshold: Option<f64>,
    /// Collision pairs "n:m,n:m,..." with n > m >= 0.
    #[arg(long)]
    pairs: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format: text (default), csv, or pgm.
    #[arg(long)]
    format: Option<String>,
    /// Worker threads for grid and root work.
    #[arg(long)]
    workers: Option<usize>,
    /// Keep going where strict mode refuses (q = 0, inexact restarts).
    #[arg(long)]
    lenient: bool,
    /// key=value defaults file; explicit flags win.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Format {
    Text,
    Csv,
    Pgm,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "pgm" => Ok(Format::Pgm),
            _ => Err(Error::domain(format!("unknown format `{s}` (expected text, csv, or pgm)"))),
        }
    }
}

const CONFIG_KEYS: &[&str] = &[
    "family", "family-file", "point", "nmax", "iters", "grid", "threshold", "pairs", "out",
    "format", "workers", "lenient",
];

fn parse_config(path: &Path) -> Result<HashMap<String, String>> {
    let text = fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::domain(format!("config line {}: expected key=value", i + 1)));
        };
        let key = k.trim();
        if !CONFIG_KEYS.contains(&key) {
            return Err(Error::domain(format!("config line {}: unknown key `{key}`", i + 1)));
        }
        map.insert(key.to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn merged<T: FromStr>(flag: Option<T>, cfg: &HashMap<String, String>, key: &str) -> Result<Option<T>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match cfg.get(key) {
        Some(s) => s
            .parse::<T>()
            .map(Some)
            .map_err(|_| Error::domain(format!("config key {key}: invalid value `{s}`"))),
        None => Ok(None),
    }
}

/// Flag and config values merged, with everything cheap already validated.
struct Resolved {
    family_text: String,
    point_text: Option<String>,
    nmax: Option<usize>,
    iters: Option<usize>,
    grid: Option<String>,
    threshold: Option<f64>,
    pairs: Option<String>,
    out: Option<PathBuf>,
    format: Format,
    workers: usize,
    lenient: bool,
}

impl Resolved {
    fn from_opts(opts: &Opts) -> Result<Resolved> {
        let cfg = match &opts.config {
            Some(p) => parse_config(p)?,
            None => HashMap::new(),
        };
        if opts.family.is_some() && opts.family_file.is_some() {
            return Err(Error::domain("give exactly one of --family and --family-file"));
        }
        let family_text = if let Some(text) = &opts.family {
            text.clone()
        } else if let Some(path) = &opts.family_file {
            fs::read_to_string(path)?
        } else if let Some(text) = cfg.get("family") {
            text.clone()
        } else if let Some(path) = cfg.get("family-file") {
            fs::read_to_string(path)?
        } else {
            return Err(Error::domain("no family given (use --family or --family-file)"));
        };
        let workers = match merged(opts.workers, &cfg, "workers")? {
            Some(w) => w,
            None => match std::env::var("HEIGHTLAB_WORKERS") {
                Ok(s) => s.parse().map_err(|_| {
                    Error::domain(format!("HEIGHTLAB_WORKERS must be a positive integer, got `{s}`"))
                })?,
                Err(_) => 1,
            },
        };
        if workers == 0 {
            return Err(Error::domain("worker count must be positive"));
        }
        let format = match merged(opts.format.clone(), &cfg, "format")? {
            Some(s) => s.parse()?,
            None => Format::Text,
        };
        let lenient = opts.lenient
            || match cfg.get("lenient").map(String::as_str) {
                Some("true") | Some("1") => true,
                Some("false") | Some("0") | None => false,
                Some(v) => {
                    return Err(Error::domain(format!("config key lenient: invalid value `{v}`")))
                }
            };
        Ok(Resolved {
            family_text,
            point_text: merged(opts.point.clone(), &cfg, "point")?,
            nmax: merged(opts.nmax, &cfg, "nmax")?,
            iters: merged(opts.iters, &cfg, "iters")?,
            grid: merged(opts.grid.clone(), &cfg, "grid")?,
            threshold: merged(opts.threshold, &cfg, "threshold")?,
            pairs: merged(opts.pairs.clone(), &cfg, "pairs")?,
            out: merged(opts.out.clone(), &cfg, "out")?,
            format,
            workers,
            lenient,
        })
    }

    fn family(&self) -> Result<RationalMapFamily> {
        parse_family(&self.family_text)
    }

    fn point(&self) -> Result<ProjPointK> {
        let text = self
            .point_text
            .as_deref()
            .ok_or_else(|| Error::domain("this command requires --point"))?;
        parse_point(text)
    }

    fn lift(&self) -> Result<MarkedLift> {
        let a = self.point()?;
        MarkedLift::new(a.a1().clone(), a.a2().clone())
    }

    fn grid_fields(&self, default: &str) -> Result<[String; 6]> {
        let text = self.grid.as_deref().unwrap_or(default);
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let fields: [&str; 6] = parts
            .try_into()
            .map_err(|_| Error::domain(format!("--grid wants 6 comma-separated fields, got `{text}`")))?;
        Ok(fields.map(str::to_string))
    }

    fn param_grid(&self, default: &str) -> Result<ParamGrid> {
        let f = self.grid_fields(default)?;
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::domain(format!("--grid: invalid number `{s}`")))
        };
        let count = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::domain(format!("--grid: invalid pixel count `{s}`")))
        };
        ParamGrid::new(num(&f[0])?, num(&f[1])?, num(&f[2])?, num(&f[3])?, count(&f[4])?, count(&f[5])?)
    }

    fn grid_spec(&self, default: &str) -> Result<GridSpec> {
        let f = self.grid_fields(default)?;
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::domain(format!("--grid: invalid number `{s}`")))
        };
        let count = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::domain(format!("--grid: invalid sample count `{s}`")))
        };
        Ok(GridSpec { r_in: num(&f[0])?, r_out: num(&f[1])?, n_theta: count(&f[4])?, n_r: count(&f[5])? })
    }

    fn pair_list(&self) -> Result<Vec<(usize, usize)>> {
        let text = self
            .pairs
            .as_deref()
            .ok_or_else(|| Error::domain("this command requires --pairs \"n:m,...\""))?;
        let mut pairs = Vec::new();
        for item in text.split(',') {
            let bad = || Error::domain(format!("--pairs: expected n:m, got `{item}`"));
            let (n, m) = item.trim().split_once(':').ok_or_else(bad)?;
            pairs.push((n.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?));
        }
        Ok(pairs)
    }

    fn text_only(&self, command: &str) -> Result<()> {
        if self.format != Format::Text {
            return Err(Error::domain(format!("{command} only supports --format text")));
        }
        Ok(())
    }
}

enum Rendered {
    Text(String),
    Bytes(Vec<u8>),
}

fn dispatch(cmd: &Command, o: &Resolved) -> Result<Rendered> {
    let f = o.family()?;
    let text = |s: String| Ok(Rendered::Text(s));
    match cmd {
        Command::Height(_) => {
            o.text_only("height")?;
            let h = dynamics::canonical_height(&f, &o.point()?, o.nmax.unwrap_or(12))?;
            text(output::height_doc(&h))
        }
        Command::Orbit(_) => {
            o.text_only("orbit")?;
            let orb = dynamics::orbit(&f, &o.point()?, o.nmax.unwrap_or(64))?;
            text(output::orbit_doc(&orb))
        }
        Command::Classify(_) => {
            o.text_only("classify")?;
            let c = dynamics::classify(&f, &o.point()?, o.nmax.unwrap_or(64))?;
            text(output::classification_doc(&c))
        }
        Command::Resultant(_) => {
            o.text_only("resultant")?;
            let rep = family::degenerate_places(&f)?;
            text(output::places_doc(&f, &rep))
        }
        Command::Degenerate(_) => {
            o.text_only("degenerate")?;
            let ord = degeneration::order_sequence(&f, &o.lift()?, o.iters.unwrap_or(6), o.lenient)?;
            text(output::orders_doc(&ord))
        }
        Command::Escape(_) => {
            let spec = o.grid_spec("0.1,0.5,0,0,64,64")?;
            let g = degeneration::escape_grid(&f, &o.lift()?, &spec, o.iters.unwrap_or(8), o.lenient)?;
            match o.format {
                Format::Text => text(output::escape_doc(&g)),
                Format::Csv => text(output::escape_csv(&g)),
                Format::Pgm => Err(Error::domain("escape only supports --format text or csv")),
            }
        }
        Command::Activity(_) => {
            let grid = o.param_grid("-2.5,-1.5,1,1.5,512,512")?;
            let cap = o.iters.unwrap_or(bifurcation::DEFAULT_ACTIVITY_CAP);
            let threshold = o.threshold.unwrap_or(bifurcation::DEFAULT_ACTIVITY_THRESHOLD);
            let m = bifurcation::activity_map(&f, &o.point()?, &grid, cap, threshold);
            match o.format {
                Format::Text => text(output::activity_doc(&m)),
                Format::Csv => text(output::activity_csv(&m)),
                Format::Pgm => Ok(Rendered::Bytes(output::activity_pgm(&m))),
            }
        }
        Command::PreperiodicParams(_) => {
            o.text_only("preperiodic-params")?;
            let a = o.point()?;
            let tol = o.threshold.unwrap_or(bifurcation::COLLISION_TOL);
            let docs: Vec<String> = o
                .pair_list()?
                .iter()
                .map(|&(n, m)| {
                    bifurcation::preperiodic_parameters(&f, &a, n, m, tol).map(|rs| output::rootset_doc(&rs))
                })
                .collect::<Result<_>>()?;
            text(docs.join("\n"))
        }
        Command::Density(_) => {
            o.text_only("density")?;
            let grid = o.param_grid("-2.5,-1.5,1,1.5,256,256")?;
            let rep = bifurcation::density_experiment(&f, &o.point()?, &grid, &o.pair_list()?)?;
            text(output::density_doc(&rep))
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let o = Resolved::from_opts(cli.command.opts())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(o.workers)
        .build()
        .map_err(|e| Error::internal(format!("worker pool: {e}")))?;
    let rendered = pool.install(|| dispatch(&cli.command, &o))?;
    match (&o.out, rendered) {
        (Some(path), Rendered::Text(s)) => fs::write(path, s)?,
        (Some(path), Rendered::Bytes(b)) => fs::write(path, b)?,
        (None, Rendered::Text(s)) => std::io::stdout().write_all(s.as_bytes())?,
        (None, Rendered::Bytes(b)) => std::io::stdout().write_all(&b)?,
    }
    Ok(())
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("heightlab: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn opts_with_config(lines: &str) -> (tempfile::NamedTempFile, Opts) {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(file, "{lines}").unwrap();
        let opts = Opts { config: Some(file.path().to_path_buf()), ..Opts::default() };
        (file, opts)
    }

    #[test]
    fn flags_beat_config() {
        let (_file, mut opts) = opts_with_config("family = z^3 + t\nnmax = 5\nworkers = 2\n");
        opts.family = Some("z^2 + t".into());
        let r = Resolved::from_opts(&opts).unwrap();
        assert_eq!(r.family_text, "z^2 + t");
        assert_eq!(r.nmax, Some(5));
        assert_eq!(r.workers, 2);
    }

    #[test]
    fn config_errors_are_domain() {
        let (_file, opts) = opts_with_config("nmax 5\n");
        assert!(matches!(Resolved::from_opts(&opts), Err(Error::Domain(_))));
        let (_file, opts) = opts_with_config("knights = ni\n");
        assert!(matches!(Resolved::from_opts(&opts), Err(Error::Domain(_))));
        let (_file, opts) = opts_with_config("family = z^2+t\nworkers = none\n");
        assert!(matches!(Resolved::from_opts(&opts), Err(Error::Domain(_))));
    }

    #[test]
    fn missing_family_is_domain() {
        let opts = Opts::default();
        assert!(matches!(Resolved::from_opts(&opts), Err(Error::Domain(_))));
    }

    #[test]
    fn grid_and_pairs_parsing() {
        let opts = Opts {
            family: Some("z^2+t".into()),
            grid: Some("-1, -1, 1, 1, 8, 4".into()),
            pairs: Some("3:1, 2:0".into()),
            ..Opts::default()
        };
        let r = Resolved::from_opts(&opts).unwrap();
        let g = r.param_grid("0,0,1,1,1,1").unwrap();
        assert_eq!((g.width, g.height), (8, 4));
        assert_eq!(r.pair_list().unwrap(), vec![(3, 1), (2, 0)]);
        let spec = r.grid_spec("0,0,0,0,0,0").unwrap();
        assert_eq!((spec.n_theta, spec.n_r), (8, 4));

        let bad = Opts { family: Some("z^2+t".into()), grid: Some("1,2,3".into()), ..Opts::default() };
        let r = Resolved::from_opts(&bad).unwrap();
        assert!(r.param_grid("0,0,1,1,1,1").is_err());
    }

    #[test]
    fn format_and_lenient_merging() {
        let (_file, opts) = opts_with_config("family = z^2+t\nformat = csv\nlenient = true\n");
        let r = Resolved::from_opts(&opts).unwrap();
        assert_eq!(r.format, Format::Csv);
        assert!(r.lenient);
        let (_file, opts) = opts_with_config("family = z^2+t\nformat = svg\n");
        assert!(Resolved::from_opts(&opts).is_err());
    }
}
