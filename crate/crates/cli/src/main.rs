use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use cascade_lab::graph::{degree_stats, DegreeSequence};
use cascade_lab::harness::{
    self, parse_config, parse_f64_list, parse_usize_list, BoundaryKind, ExperimentSpec, FlatLength,
    FptSpec,
};
use cascade_lab::rng::stream;
use cascade_lab::{theory, Error};
use clap::{Args, CommandFactory, Parser, Subcommand};

/// Directory used for output when `--out` is not given.
const OUT_DIR_ENV: &str = "CASCADE_LAB_OUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "cascade-lab",
    version,
    about = "Load-surge cascades on random graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// key = value file; flags given on the command line win
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV; defaults to $CASCADE_LAB_OUT_DIR/<subcommand>.csv, else stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    reps: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
struct Family {
    /// cm, cm-erased, lattice, star, er, chained-stars
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Mean degree of the Erdős–Rényi family
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    max_attempts: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Failure-size tail P(A >= k)
    CascadeTail {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        theta: Option<f64>,
        /// Thresholds, e.g. 50,100,200 or f:0.05,f:0.1
        #[arg(long)]
        k: Option<String>,
        /// Also write one row per replication here
        #[arg(long)]
        rows: Option<PathBuf>,
    },
    /// Scaled first-disconnection times T/sqrt(m)
    FirstDisconnect {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
    },
    /// Edges outside the giant after i removals
    OutsideGiant {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
        /// Removal counts, e.g. 100,1000
        #[arg(long)]
        checkpoints: Option<String>,
    },
    /// Mean number of isolated lines after i removals
    Census {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Connectivity after percolation at q = c/sqrt(m)
    Connectivity {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        c: Option<String>,
    },
    /// Random-walk first-passage tails over constant and moving boundaries
    Fpt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        /// Flat stretch of the moving boundary: an integer or k^a
        #[arg(long)]
        l: Option<String>,
        #[arg(long)]
        k: Option<String>,
        /// gplus, gminus, const (comma separated); const is always included
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Evaluate a closed-form constant
    Theory {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
        /// tail-constant, star-tail, disconnect-constant, rayleigh-pdf,
        /// rayleigh-cdf, rayleigh-quantile, outside-giant, line-moment,
        /// connectivity, xi, beta, er-extinction, er-giant, gamma
        #[arg(long)]
        what: Option<String>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        p2: Option<f64>,
        #[arg(long)]
        d: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        i: Option<f64>,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Sample one graph and write its edge list
    GraphGen {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::Parse { .. }
            | Error::OddDegreeSum(_)
            | Error::Undefined(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Settings from the config file overlaid with explicit flags.
struct Settings {
    name: &'static str,
    map: BTreeMap<String, String>,
}

impl Settings {
    fn load(name: &'static str, common: &Common) -> Outcome<Self> {
        let mut map = match &common.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        for (k, v) in [
            ("seed", common.seed.map(|s| s.to_string())),
            ("reps", common.reps.map(|r| r.to_string())),
        ] {
            if let Some(v) = v {
                map.insert(k.into(), v);
            }
        }
        let mut s = Self { name, map };
        s.fill("seed", "1");
        s.fill("reps", "1000");
        Ok(s)
    }

    fn fill(&mut self, key: &str, default: &str) {
        self.map.entry(key.into()).or_insert_with(|| default.into());
    }

    fn set<T: Display>(&mut self, key: &str, value: &Option<T>) {
        if let Some(v) = value {
            self.map.insert(key.into(), v.to_string());
        }
    }

    fn family(&mut self, f: &Family) {
        self.set("family", &f.family);
        self.set("n", &f.n);
        self.set("lambda", &f.lambda);
        self.set("max_attempts", &f.max_attempts);
        self.fill("family", "cm");
        self.fill("n", "2000");
        self.fill("max_attempts", &harness::DEFAULT_MAX_ATTEMPTS.to_string());
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str, default: T) -> Outcome<T> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Failure::Usage(format!("bad value '{v}' for {key}"))),
        }
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> Outcome<T> {
        let v = self
            .get(key)
            .ok_or_else(|| Failure::Usage(format!("--{} is required", key.replace('_', "-"))))?;
        v.parse()
            .map_err(|_| Failure::Usage(format!("bad value '{v}' for {key}")))
    }

    fn spec(&self) -> Outcome<ExperimentSpec> {
        Ok(ExperimentSpec::from_map(&self.map)?)
    }

    fn seed(&self) -> Outcome<u64> {
        self.parse("seed", 1)
    }

    fn reps(&self) -> Outcome<usize> {
        self.parse("reps", 1000)
    }

    fn sequence(&self) -> Outcome<DegreeSequence> {
        let spec = self.spec()?;
        spec.family.sequence().cloned().ok_or_else(|| {
            Failure::Usage(format!(
                "{} needs a configuration-model family (cm or cm-erased)",
                self.name
            ))
        })
    }

    fn header(&self) -> String {
        let mut s = format!(
            "# cascade-lab {}\n# command: {}\n",
            env!("CARGO_PKG_VERSION"),
            self.name
        );
        for (k, v) in self.map.iter().filter(|(k, _)| *k != "seed") {
            s.push_str(&format!("# {k} = {v}\n"));
        }
        s.push_str(&format!(
            "# master_seed = {}\n",
            self.get("seed").unwrap_or("1")
        ));
        s
    }
}

fn write_output(settings: &Settings, out: &Option<PathBuf>, body: &str) -> Outcome<()> {
    let text = format!("{}{body}", settings.header());
    let path = match out {
        Some(p) => Some(p.clone()),
        None => std::env::var_os(OUT_DIR_ENV)
            .map(|dir| PathBuf::from(dir).join(format!("{}.csv", settings.name))),
    };
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| {
                    Failure::Runtime(format!("cannot create {}: {e}", parent.display()))
                })?;
            }
            std::fs::write(&p, text)
                .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn configure_threads(common: &Common) -> Outcome<()> {
    if let Some(t) = common.threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    Ok(())
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::CascadeTail { common, .. }
        | Command::FirstDisconnect { common, .. }
        | Command::OutsideGiant { common, .. }
        | Command::Census { common, .. }
        | Command::Connectivity { common, .. }
        | Command::Fpt { common, .. }
        | Command::Theory { common, .. }
        | Command::GraphGen { common, .. } => common,
    }
}

fn subcommand_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::CascadeTail { .. } => "cascade-tail",
        Command::FirstDisconnect { .. } => "first-disconnect",
        Command::OutsideGiant { .. } => "outside-giant",
        Command::Census { .. } => "census",
        Command::Connectivity { .. } => "connectivity",
        Command::Fpt { .. } => "fpt",
        Command::Theory { .. } => "theory",
        Command::GraphGen { .. } => "graph-gen",
    }
}

fn run(cmd: Command) -> Outcome<()> {
    configure_threads(common_of(&cmd))?;
    match cmd {
        Command::CascadeTail {
            common,
            family,
            theta,
            k,
            rows,
        } => {
            let mut s = Settings::load("cascade-tail", &common)?;
            s.family(&family);
            s.set("theta", &theta);
            s.set("k", &k);
            s.fill("theta", "1");
            s.fill("k", "1");
            let spec = s.spec()?;
            let report = harness::run_failure_tail(&spec).map_err(|e| context(&s, e))?;
            if let Some(path) = rows {
                write_output(&s, &Some(path), &harness::cascade_rows_csv(&report.rows))?;
            }
            if report.sampler_failures > 0 {
                eprintln!(
                    "{} replications skipped: connectivity sampler gave up",
                    report.sampler_failures
                );
            }
            write_output(&s, &common.out, &harness::tails_csv(&report.estimates))
        }
        Command::FirstDisconnect { common, family } => {
            let mut s = Settings::load("first-disconnect", &common)?;
            s.family(&family);
            let spec = s.spec()?;
            let report = harness::run_first_disconnect(&spec).map_err(|e| context(&s, e))?;
            if let Some((p2, d)) = spec.family.degree_law() {
                if let Ok(ks) = harness::rayleigh_ks(&report.values(), p2, d) {
                    eprintln!(
                        "KS distance to Rayleigh: {:.4} (p = {:.4})",
                        ks.distance, ks.p_value
                    );
                }
            }
            write_output(&s, &common.out, &harness::disconnect_csv(&report.samples))
        }
        Command::OutsideGiant {
            common,
            family,
            checkpoints,
        } => {
            let mut s = Settings::load("outside-giant", &common)?;
            s.family(&family);
            s.set("checkpoints", &checkpoints);
            let spec = s.spec()?;
            let (rows, _) = harness::run_outside_giant(&spec).map_err(|e| context(&s, e))?;
            write_output(&s, &common.out, &harness::outside_csv(&rows))
        }
        Command::Census {
            common,
            family,
            i,
            k_max,
        } => {
            let mut s = Settings::load("census", &common)?;
            s.family(&family);
            s.set("i", &i);
            s.set("k_max", &k_max);
            let seq = s.sequence()?;
            let rows = harness::run_census_moments(
                &seq,
                s.require("i")?,
                s.parse("k_max", 5)?,
                s.reps()?,
                s.seed()?,
            )
            .map_err(|e| context(&s, e))?;
            write_output(&s, &common.out, &harness::census_csv(&rows))
        }
        Command::Connectivity { common, family, c } => {
            let mut s = Settings::load("connectivity", &common)?;
            s.family(&family);
            s.set("c", &c);
            let seq = s.sequence()?;
            let c_grid = parse_f64_list(s.get("c").unwrap_or("1"))?;
            let attempts = s.parse("max_attempts", harness::DEFAULT_MAX_ATTEMPTS)?;
            let rows = harness::run_connectivity(&seq, &c_grid, s.reps()?, s.seed()?, attempts)
                .map_err(|e| context(&s, e))?;
            write_output(&s, &common.out, &harness::connectivity_csv(&rows))
        }
        Command::Fpt {
            common,
            theta,
            gamma,
            l,
            k,
            boundary,
        } => {
            let mut s = Settings::load("fpt", &common)?;
            s.set("theta", &theta);
            s.set("gamma", &gamma);
            s.set("l", &l);
            s.set("k", &k);
            s.set("boundary", &boundary);
            let mut boundaries = vec![BoundaryKind::Constant];
            for b in s
                .get("boundary")
                .unwrap_or("gplus,gminus")
                .split(',')
                .map(str::trim)
            {
                let b = BoundaryKind::parse(b)?;
                if !boundaries.contains(&b) {
                    boundaries.push(b);
                }
            }
            let spec = FptSpec {
                theta: s.parse("theta", 1.0)?,
                gamma: s.parse("gamma", 0.3)?,
                l: FlatLength::parse(s.get("l").unwrap_or("k^0.6"))?,
                k_grid: parse_usize_list(s.get("k").unwrap_or("10000"))?,
                boundaries,
                reps: s.reps()?,
                master_seed: s.seed()?,
            };
            if spec.k_grid.is_empty() || spec.reps == 0 {
                return Err(Failure::Usage(
                    "need at least one k and one replication".into(),
                ));
            }
            let rows = harness::run_fpt(&spec).map_err(|e| context(&s, e))?;
            print_ratios(&rows);
            write_output(&s, &common.out, &harness::fpt_csv(&rows))
        }
        Command::Theory {
            common,
            family,
            what,
            theta,
            p2,
            d,
            m,
            k,
            i,
            x,
            c,
            q,
            alpha,
        } => {
            let mut s = Settings::load("theory", &common)?;
            s.family(&family);
            s.set("what", &what);
            s.set("theta", &theta);
            s.set("p2", &p2);
            s.set("d", &d);
            s.set("m", &m);
            s.set("k", &k);
            s.set("i", &i);
            s.set("x", &x);
            s.set("c", &c);
            s.set("q", &q);
            s.set("alpha", &alpha);
            let values = evaluate_theory(&s)?;
            let row = values
                .iter()
                .map(|v| format!("{v:.10}"))
                .collect::<Vec<_>>()
                .join(",");
            if common.out.is_some() {
                write_output(&s, &common.out, &format!("{row}\n"))
            } else {
                println!("{row}");
                Ok(())
            }
        }
        Command::GraphGen { common, family } => {
            let mut s = Settings::load("graph-gen", &common)?;
            s.family(&family);
            let spec = s.spec()?;
            let mut rng = stream(spec.master_seed, 0);
            let g = spec
                .family
                .sample(&mut rng, spec.max_attempts)
                .map_err(|e| context(&s, e))?
                .ok_or_else(|| Failure::Runtime("sampler gave up; raise --max-attempts".into()))?;
            let text = g.to_edge_list_text();
            let body: String = text
                .lines()
                .filter(|l| !l.starts_with('#'))
                .map(|l| format!("{}\n", l.replace(' ', ",")))
                .collect();
            write_output(&s, &common.out, &format!("u,v\n{body}"))
        }
    }
}

fn context(s: &Settings, e: Error) -> Failure {
    let f = Failure::from(e);
    match f {
        Failure::Runtime(msg) => Failure::Runtime(format!(
            "{} failed (master seed {}, reps {}): {msg}",
            s.name,
            s.get("seed").unwrap_or("1"),
            s.get("reps").unwrap_or("1000")
        )),
        usage => usage,
    }
}

fn print_ratios(rows: &[harness::FptRow]) {
    for r in rows.iter().filter(|r| r.boundary != BoundaryKind::Constant) {
        if let Some(base) = rows
            .iter()
            .find(|b| b.k == r.k && b.boundary == BoundaryKind::Constant)
        {
            let ratio = r.estimate.successes as f64 / base.estimate.successes.max(1) as f64;
            eprintln!("k={} {}/const = {ratio:.4}", r.k, r.boundary.name());
        }
    }
}

fn evaluate_theory(s: &Settings) -> Outcome<Vec<f64>> {
    let what: String = s.require("what")?;
    let theta = || s.parse("theta", 1.0);
    let pd = || -> Outcome<(f64, f64)> { Ok((s.parse("p2", 0.5)?, s.parse("d", 2.5)?)) };
    let stats = || -> Outcome<_> { Ok(degree_stats(&s.sequence()?)?) };
    Ok(match what.as_str() {
        "tail-constant" => vec![theory::tail_constant(theta()?)],
        "star-tail" => vec![theory::star_tail(
            s.require::<f64>("m")? as usize,
            s.require("k")?,
            theta()?,
        )?],
        "disconnect-constant" => {
            let (p2, d) = pd()?;
            vec![theory::disconnect_constant(
                theta()?,
                p2,
                d,
                s.require("m")?,
            )?]
        }
        "rayleigh-pdf" => {
            let (p2, d) = pd()?;
            vec![theory::rayleigh_pdf(s.require("x")?, p2, d)?]
        }
        "rayleigh-cdf" => {
            let (p2, d) = pd()?;
            vec![theory::rayleigh_cdf(s.require("x")?, p2, d)?]
        }
        "rayleigh-quantile" => {
            let (p2, d) = pd()?;
            vec![theory::rayleigh_quantile(s.require("q")?, p2, d)?]
        }
        "outside-giant" => {
            let (p2, d) = pd()?;
            let c = theory::outside_giant_constants(p2, d)?;
            vec![c.edges_in_lines, c.vertices_outside]
        }
        "line-moment" => {
            let (p2, d) = pd()?;
            vec![theory::line_first_moment(
                s.require("k")?,
                p2,
                d,
                s.require("i")?,
                s.require("m")?,
            )?]
        }
        "connectivity" => {
            let (p2, d) = pd()?;
            let (u, c) = theory::connectivity_probs(s.parse("c", 1.0)?, p2, d)?;
            vec![c, u]
        }
        "xi" => vec![theory::xi(s.require("q")?, &stats()?)?],
        "beta" => vec![theory::beta_alpha(s.require("alpha")?, &stats()?)?],
        "er-extinction" => vec![theory::er_extinction(s.require("lambda")?)?],
        "er-giant" => vec![theory::er_giant_fraction(s.require("lambda")?)?],
        "gamma" => vec![theory::gamma(s.require("x")?)],
        other => return Err(Failure::Usage(format!("unknown constant '{other}'"))),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let name = subcommand_name(&cli.command);
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n");
            if let Some(sub) = Cli::command().find_subcommand_mut(name) {
                eprintln!("{}", sub.render_help());
            }
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
