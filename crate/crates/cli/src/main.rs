mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxeter_pd::coxeter::{enumerate_ball, enumerate_group, Ball, Colour, CoxeterMatrix, CoxeterSystem, DEFAULT_CAP};
use coxeter_pd::dihedral::{finite_region_check, pqr, refute_infinite, region_scan, RegionStatus};
use coxeter_pd::khinchin::{khinchine_scan, KhinchineReport};
use coxeter_pd::pairpart::{f_n_triangle_csv, verify_all, verify_free_moments, DEFAULT_MAX_N};
use coxeter_pd::pd::{check_on_ball, GroupFunction, PdVerdict, Status};
use coxeter_pd::rademacher::{exp_power_profile, is_completely_monotone, moment_feasible_pm1, radial_pd_check, simplex_decompose, MomentVerdict};
use coxeter_pd::rational::{fmt_rational, parse_grid, parse_rational, Rational};
use coxeter_pd::reproduce::{self, DEFAULT_SEED};
use coxeter_pd::series::{
    chromatic_identity_check, chromatic_identity_check_truncated, coset_series, eng_check, growth_series, layer_counts, wat_minus_one,
    wminus1_scan,
};

use report::{write_output, write_plot, Format, Report};

type Res<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "coxpd", version, about = "Exact positive-definiteness checks, growth series and pairpartition identities for Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; `text` is only meaningful for `reproduce`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Also write headerless CSV (x,y[,z]) triples for plotting.
    #[arg(long, global = true)]
    emit_plotdata: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Named system, e.g. A3, B3, H3, I2(7), Dinf, Atilde2, Rad4, AllThree4.
    #[arg(long, conflicts_with = "matrix")]
    preset: Option<String>,
    /// JSON file {"rank": n, "m": [[...]], "labels": [...]}; 0 stands for infinity.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Enumerate only the ball of this radius (default: the whole group).
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

impl GroupArgs {
    fn coxeter_matrix(&self) -> Res<CoxeterMatrix> {
        match (&self.preset, &self.matrix) {
            (Some(p), _) => Ok(CoxeterMatrix::preset(p)?),
            (None, Some(path)) => Ok(CoxeterMatrix::from_json_file(path)?),
            (None, None) => Err("one of --preset or --matrix is required".into()),
        }
    }

    fn system(&self) -> Res<CoxeterSystem> {
        Ok(CoxeterSystem::new(self.coxeter_matrix()?)?)
    }

    fn ball(&self) -> Res<Ball> {
        let sys = self.system()?;
        Ok(match self.radius {
            Some(r) => enumerate_ball(&sys, r, self.cap)?,
            None => enumerate_group(&sys, self.cap)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FunctionKind {
    LengthExp,
    ColourExp,
    /// One grid value per generator, full product grid.
    Riesz,
    Delta,
    /// `1` on `W_T`, `r` elsewhere; needs `--subset`.
    Subgroup,
    /// `exp(t Δ)`; numeric.
    ExpDelta,
    /// `exp(-t |w|^p)`; numeric, needs `--power`.
    ExpLengthPower,
    /// Rank 2 only: grid over each of p, q, r.
    Pqr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Psd,
    NotPsd,
    Any,
}

#[derive(Subcommand)]
enum Command {
    /// List the elements of a group or ball.
    Enumerate {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Certify or refute positive semidefiniteness over a parameter grid.
    PdCheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long = "fn", value_enum)]
        function: FunctionKind,
        /// `start:stop:step` or a single value.
        #[arg(long, default_value = "-1:1:1/8", allow_hyphen_values = true)]
        grid: String,
        /// Generator indices of T, comma separated (subgroup only).
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
        /// Exponent p for exp-length-power.
        #[arg(long)]
        power: Option<String>,
        #[arg(long, value_enum, default_value = "psd")]
        expect: Expect,
    },
    /// Closed-form (p, q, r) region of a dihedral group, optionally against Grams.
    DihedralRegion {
        /// Label n (group of order 2n); omit for the infinite dihedral group.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value = "-1:1:1/8", allow_hyphen_values = true)]
        grid: String,
        /// Finite n: compare with the full-group Gram. Infinite: refute every outside point.
        #[arg(long)]
        verify: bool,
        /// Largest ball radius searched for refutations.
        #[arg(long, default_value_t = 64)]
        max_radius: usize,
    },
    /// Coordinates of a radial profile on Rad_n in the extreme-point basis.
    RadialSimplex {
        /// f(0), …, f(n), comma separated; f(0) must be 1.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        profile: Vec<String>,
    },
    /// Truncated moment problem on [-1, 1] and complete monotonicity.
    MomentsFeasible {
        #[arg(long, value_delimiter = ',', conflicts_with = "exp_power", allow_hyphen_values = true)]
        profile: Vec<String>,
        /// `t,p`: the rationalised profile exp(-t k^p).
        #[arg(long, value_delimiter = ',')]
        exp_power: Vec<String>,
        #[arg(long, default_value_t = 13)]
        len: usize,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Growth series from Serre's recursion against BFS layer counts.
    Growth {
        #[command(flatten)]
        group: GroupArgs,
        /// Coset series W^T for this T instead of W.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        /// Also evaluate at this point.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Chromatic series identity and W(-1, q) = ∏(1 - q_s).
    Chromatic {
        #[command(flatten)]
        group: GroupArgs,
        /// Per-generator q; random when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        q: Vec<String>,
    },
    /// W^T(-1) against the conjugation count, for every T.
    Eng {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Pairpartition identities for every n up to the given size.
    PairpartVerify {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        /// Print the coefficient triangle of f_n as CSV instead.
        #[arg(long)]
        triangle: bool,
    },
    /// Free Bernoulli moments from pairpartitions and from free cumulants.
    FreeMoments {
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Noncommutative Khinchine ratios ‖Σ a_s λ(s)‖_p / ‖a‖_2.
    Khinchine {
        #[command(flatten)]
        group: GroupArgs,
        /// Coefficients per generator (default all ones).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "2,4,6,8")]
        p: Vec<f64>,
    },
    /// W(-1) for rank-3 matrices with labels from a list (0 = infinity).
    Wminus1Scan {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,0")]
        labels: Vec<u32>,
    },
    /// Run the numbered acceptance checks.
    #[command(alias = "reproduce-paper")]
    Reproduce {
        /// Only this criterion (1-10).
        #[arg(long)]
        criterion: Option<usize>,
    },
}

fn rationals(list: &[String]) -> Res<Vec<Rational>> {
    Ok(list.iter().map(|s| parse_rational(s.trim())).collect::<Result<_, _>>()?)
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn status_str(v: &PdVerdict) -> String {
    serde_json::to_value(v.status).ok().and_then(|s| s.as_str().map(str::to_string)).unwrap_or_default()
}

/// Every vector in `axes[0] × … × axes[k-1]`.
fn product(axes: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

fn enumerate(group: &GroupArgs) -> Res<Report> {
    let ball = group.ball()?;
    let cm = ball.coxeter_matrix();
    let rows = ball
        .elements()
        .iter()
        .map(|e| {
            let word: Vec<&str> = e.letters().map(|s| cm.label(s)).collect();
            let colour: Vec<&str> = e.colour.iter().map(|s| cm.label(s)).collect();
            vec![word.join(" "), e.length.to_string(), colour.join(" "), e.colour_length().to_string()]
        })
        .collect();
    let plot = ball.layer_sizes().iter().enumerate().map(|(k, n)| vec![k.to_string(), n.to_string()]).collect();
    let mut r = Report::new(ball.summary_json()).table(&["word", "length", "colour", "colour_length"], rows);
    r.plot = plot;
    Ok(r)
}

fn pd_check(group: &GroupArgs, kind: FunctionKind, grid: &str, subset: &[usize], power: Option<&str>, expect: Expect) -> Res<Report> {
    let ball = group.ball()?;
    let values = parse_grid(grid)?;
    let rank = ball.rank();
    let points: Vec<Vec<Rational>> = match kind {
        FunctionKind::Delta => vec![Vec::new()],
        FunctionKind::Riesz => product(&vec![values; rank]),
        FunctionKind::Pqr => product(&vec![values; 3]),
        _ => values.into_iter().map(|x| vec![x]).collect(),
    };
    let power = power.map(parse_rational).transpose()?;
    let t = Colour::from_letters(subset.iter().copied());
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut report = Report::default();
    for params in points {
        let phi = match kind {
            FunctionKind::LengthExp => GroupFunction::LengthExp(params[0].clone()),
            FunctionKind::ColourExp => GroupFunction::ColourExp(params[0].clone()),
            FunctionKind::Riesz => GroupFunction::Riesz(params.clone()),
            FunctionKind::Delta => GroupFunction::Delta,
            FunctionKind::Subgroup => GroupFunction::SubgroupIndicator { t, r: params[0].clone() },
            FunctionKind::ExpDelta => GroupFunction::ExpDelta(params[0].clone()),
            FunctionKind::ExpLengthPower => GroupFunction::ExpLengthPower {
                t: params[0].clone(),
                p: power.clone().ok_or("exp-length-power needs --power")?,
            },
            FunctionKind::Pqr => pqr(&params[0], &params[1], &params[2]),
        };
        let v = check_on_ball(&ball, &phi)?;
        let ok = match expect {
            Expect::Psd => v.is_psd(),
            Expect::NotPsd => v.status == Status::NotPsd,
            Expect::Any => true,
        };
        let mut entry = v.to_json();
        entry["params"] = json!(strs(&params));
        report.assert(ok, || format!("params ({}): {}", strs(&params).join(", "), entry));
        rows.push(vec![strs(&params).join(" "), status_str(&v), v.min_pivot_or_eig.to_string()]);
        if params.len() <= 2 {
            let y = if v.is_psd() { "1" } else { "0" };
            report.plot.push(strs(&params).into_iter().chain([y.to_string()]).collect());
        }
        results.push(entry);
    }
    let json = json!({ "system": ball.coxeter_matrix().to_json(), "elements": ball.len(), "results": results });
    let table = Report::new(json).table(&["params", "status", "min_pivot_or_eig"], rows);
    Ok(Report { plot: report.plot, failures: report.failures, ..table })
}

fn dihedral_region(n: Option<u64>, grid: &str, verify: bool, max_radius: usize) -> Res<Report> {
    let vals = parse_grid(grid)?;
    let scan = region_scan(n, &vals);
    let mut report = Report::default();
    let mut checks = Vec::new();
    if verify {
        match n {
            Some(n) => {
                let ball = enumerate_group(&CoxeterSystem::new(CoxeterMatrix::dihedral(n as u32))?, DEFAULT_CAP)?;
                for row in &scan {
                    if row.status == RegionStatus::Boundary {
                        continue;
                    }
                    let gram = check_on_ball(&ball, &pqr(&row.p, &row.q, &row.r))?.is_psd();
                    let inside = finite_region_check(n, &row.p, &row.q, &row.r).inside();
                    report.assert(gram == inside, || format!("({}, {}, {}): region {inside}, Gram {gram}", row.p, row.q, row.r));
                }
            }
            None => {
                for row in scan.iter().filter(|r| r.status == RegionStatus::Outside) {
                    let w = refute_infinite(&row.p, &row.q, &row.r, max_radius);
                    report.assert(w.is_some(), || format!("({}, {}, {}): no witness up to radius {max_radius}", row.p, row.q, row.r));
                    checks.push(json!({ "p": fmt_rational(&row.p), "q": fmt_rational(&row.q), "r": fmt_rational(&row.r), "refutation": w }));
                }
            }
        }
    }
    let rows = scan
        .iter()
        .map(|r| vec![fmt_rational(&r.p), fmt_rational(&r.q), fmt_rational(&r.r), json!(r.status).as_str().unwrap_or("").to_string(), r.margin.to_string()])
        .collect();
    report.plot = scan
        .iter()
        .filter(|r| r.status != RegionStatus::Outside)
        .map(|r| vec![fmt_rational(&r.p), fmt_rational(&r.q), fmt_rational(&r.r)])
        .collect();
    let json = json!({ "n": n, "points": scan, "refutations": checks });
    let table = Report::new(json).table(&["p", "q", "r", "status", "margin"], rows);
    Ok(Report { plot: report.plot, failures: report.failures, ..table })
}

fn radial_simplex(profile: &[String]) -> Res<Report> {
    let profile = rationals(profile)?;
    let d = simplex_decompose(&profile)?;
    let v = radial_pd_check(&profile)?;
    let rows = d.lambda.iter().enumerate().map(|(l, x)| vec![l.to_string(), fmt_rational(x)]).collect();
    let mut r = Report::new(json!({ "profile": strs(&profile), "decomposition": d, "gram": v.to_json() }))
        .table(&["l", "lambda"], rows);
    r.assert(d.feasible == v.is_psd(), || format!("simplex says {}, Gram says {}", d.feasible, status_str(&v)));
    Ok(r)
}

fn moments_feasible(profile: &[String], exp_power: &[String], len: usize, digits: u32, depth: usize) -> Res<Report> {
    let profile = if exp_power.is_empty() {
        rationals(profile)?
    } else {
        let tp = rationals(exp_power)?;
        if tp.len() != 2 {
            return Err("--exp-power takes exactly two values t,p".into());
        }
        exp_power_profile(&tp[0], &tp[1], len, digits)?
    };
    if profile.is_empty() {
        return Err("give --profile or --exp-power".into());
    }
    let verdict = moment_feasible_pm1(&profile)?;
    let cm = is_completely_monotone(&profile, depth);
    let feasible = matches!(verdict, MomentVerdict::Feasible { .. });
    let rows = vec![vec![feasible.to_string(), cm.holds.to_string()]];
    Ok(Report::new(json!({ "profile": strs(&profile), "moments": verdict, "completely_monotone": cm }))
        .table(&["moment_feasible", "completely_monotone"], rows))
}

fn growth(group: &GroupArgs, subset: Option<&[usize]>, at: Option<&str>) -> Res<Report> {
    let cm = group.coxeter_matrix()?;
    let radius = group.radius.unwrap_or(10);
    let (series, name) = match subset {
        Some(t) => (coset_series(&cm, Colour::from_letters(t.iter().copied()))?, "coset_series"),
        None => (growth_series(&cm)?, "series"),
    };
    let coeffs = series.series(radius + 1)?;
    let mut report = Report::new(Value::Null);
    let mut json = json!({ "system": cm.to_json(), name: series.to_string(), "coefficients": strs(&coeffs) });
    if subset.is_none() {
        let layers = layer_counts(&cm, radius)?;
        let same = coeffs.iter().zip(&layers).all(|(c, &l)| *c == Rational::from_integer((l as i64).into()));
        report.assert(same && layers.len() == coeffs.len(), || format!("series {:?} vs layers {layers:?}", strs(&coeffs)));
        json["layer_counts"] = json!(layers);
    }
    if let Some(x) = at {
        json["value"] = json!(fmt_rational(&series.eval(&parse_rational(x)?)?));
    }
    let rows: Vec<Vec<String>> = coeffs.iter().enumerate().map(|(k, c)| vec![k.to_string(), fmt_rational(c)]).collect();
    report.plot = rows.clone();
    let table = Report::new(json).table(&["k", "coefficient"], rows);
    Ok(Report { plot: report.plot, failures: report.failures, ..table })
}

fn chromatic(group: &GroupArgs, q: &[String], seed: u64) -> Res<Report> {
    use rand::{Rng, SeedableRng};
    let cm = group.coxeter_matrix()?;
    let sys = CoxeterSystem::new(cm.clone())?;
    let finite = group.radius.is_none() && enumerate_group(&sys, group.cap).is_ok();
    let mut r = Report::default();
    let json = if finite {
        let ball = enumerate_group(&sys, group.cap)?;
        let q = if q.is_empty() {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..ball.rank()).map(|_| Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=5).into())).collect()
        } else {
            rationals(q)?
        };
        let identity = chromatic_identity_check(&ball)?;
        let w = wat_minus_one(&ball, &q)?;
        r.assert(identity.holds, || "parabolic decomposition of the chromatic series fails".into());
        r.assert(w.holds, || format!("W(-1, q) = {} but ∏(1 - q_s) = {}", w.lhs, w.rhs));
        json!({ "system": cm.to_json(), "identity": identity, "q": strs(&q), "w_minus_one": w })
    } else {
        let radius = group.radius.unwrap_or(8);
        let identity = chromatic_identity_check_truncated(&cm, radius)?;
        r.assert(identity.holds, || format!("chromatic identity fails below degree {radius}"));
        json!({ "system": cm.to_json(), "identity": identity })
    };
    Ok(Report { json, ..r })
}

fn eng(group: &GroupArgs) -> Res<Report> {
    let ball = group.ball()?;
    let mut r = Report::default();
    let mut rows = Vec::new();
    let mut all = Vec::new();
    for t in Colour::all_subsets(ball.rank()) {
        let e = eng_check(&ball, t)?;
        r.assert(e.holds, || format!("T = {:?}: W^T(-1) = {} but count = {}", e.t, e.lhs, e.rhs));
        rows.push(vec![format!("{:?}", e.t), fmt_rational(&e.lhs), e.rhs.to_string(), e.rhs_unconjugated.to_string()]);
        all.push(e);
    }
    let table = Report::new(json!({ "system": ball.coxeter_matrix().to_json(), "subsets": all }))
        .table(&["T", "lhs", "rhs", "rhs_unconjugated"], rows);
    Ok(Report { failures: r.failures, ..table })
}

fn pairpart_verify(n: usize, max_n: usize, triangle: bool) -> Res<Report> {
    if triangle {
        let csv = f_n_triangle_csv(n);
        return Ok(Report { text: csv.lines().map(str::to_string).collect(), json: json!({ "triangle": csv }), ..Default::default() });
    }
    let mut r = Report::default();
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for k in 1..=n {
        let s = verify_all(k, max_n)?;
        r.assert(s.holds, || format!("n = {k}: {}", serde_json::to_string(&s).unwrap_or_default()));
        rows.push(vec![k.to_string(), s.pairpartitions.to_string(), s.noncrossing.to_string(), s.holds.to_string()]);
        out.push(s);
    }
    let table = Report::new(json!(out)).table(&["n", "pairpartitions", "noncrossing", "holds"], rows);
    Ok(Report { failures: r.failures, ..table })
}

fn free_moments(n: usize) -> Res<Report> {
    let mut r = Report::default();
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for k in 1..=n {
        let m = verify_free_moments(k)?;
        r.assert(m.holds, || format!("n = {k}: {} vs {}", m.pairpartition_side, m.cumulant_side));
        rows.push(vec![k.to_string(), m.pairpartition_side.clone(), m.cumulant_side.clone(), m.holds.to_string()]);
        out.push(m);
    }
    let table = Report::new(json!(out)).table(&["n", "pairpartition_side", "cumulant_side", "holds"], rows);
    Ok(Report { failures: r.failures, ..table })
}

fn khinchine(group: &GroupArgs, coeffs: &[String], ps: &[f64]) -> Res<Report> {
    let ball = group.ball()?;
    let a = if coeffs.is_empty() { vec![Rational::from_integer(1.into()); ball.rank()] } else { rationals(coeffs)? };
    let reps = khinchine_scan(&ball, &a, ps)?;
    let mut r = Report::default();
    for k in &reps {
        r.assert(k.left_inequality, || format!("p = {}: lhs {} exceeds mid {}", k.p, k.lhs, k.mid));
    }
    let header: Vec<&str> = KhinchineReport::CSV_HEADER.split(',').collect();
    let rows = reps.iter().map(|k| k.csv_row().split(',').map(str::to_string).collect()).collect();
    r.plot = reps.iter().map(|k| vec![k.p.to_string(), k.ratio.to_string()]).collect();
    let table = Report::new(json!({ "system": ball.coxeter_matrix().to_json(), "coefficients": strs(&a), "scan": reps })).table(&header, rows);
    Ok(Report { plot: r.plot, failures: r.failures, ..table })
}

fn wminus1(labels: &[u32]) -> Res<Report> {
    let entries = wminus1_scan(labels)?;
    let rows = entries
        .iter()
        .map(|e| {
            let m = &e.matrix;
            vec![format!("{} {} {}", m[0][1], m[0][2], m[1][2]), e.finite.to_string(), e.series.clone(), e.value.as_ref().map(fmt_rational).unwrap_or_else(|| "pole".into())]
        })
        .collect();
    Ok(Report::new(json!(entries)).table(&["labels", "finite", "series", "value"], rows))
}

fn reproduce_cmd(criterion: Option<usize>, seed: u64) -> Res<Report> {
    let reports = match criterion {
        Some(id) => vec![reproduce::run(id, seed).ok_or("criteria are numbered 1 to 10")?],
        None => reproduce::run_all(seed),
    };
    let mut r = Report::default();
    for c in &reports {
        r.text.push(c.summary_line());
        for f in c.failures() {
            r.text.push(format!("    FAIL {}: {}", f.name, f.detail));
            r.assert(false, || format!("criterion {}: {}: {}", c.id, f.name, f.detail));
        }
    }
    let rows = reports.iter().flat_map(|c| c.checks.iter().map(move |k| vec![c.id.to_string(), k.name.clone(), k.pass.to_string(), k.detail.clone()])).collect();
    let table = Report::new(json!({ "seed": seed, "criteria": reports })).table(&["criterion", "check", "pass", "detail"], rows);
    Ok(Report { text: r.text, failures: r.failures, ..table })
}

fn run(cli: &Cli) -> Res<Report> {
    match &cli.command {
        Command::Enumerate { group } => enumerate(group),
        Command::PdCheck { group, function, grid, subset, power, expect } => pd_check(group, *function, grid, subset, power.as_deref(), *expect),
        Command::DihedralRegion { n, grid, verify, max_radius } => dihedral_region(*n, grid, *verify, *max_radius),
        Command::RadialSimplex { profile } => radial_simplex(profile),
        Command::MomentsFeasible { profile, exp_power, len, digits, depth } => moments_feasible(profile, exp_power, *len, *digits, *depth),
        Command::Growth { group, subset, at } => growth(group, subset.as_deref(), at.as_deref()),
        Command::Chromatic { group, q } => chromatic(group, q, cli.seed),
        Command::Eng { group } => eng(group),
        Command::PairpartVerify { n, max_n, triangle } => pairpart_verify(*n, *max_n, *triangle),
        Command::FreeMoments { n } => free_moments(*n),
        Command::Khinchine { group, coeffs, p } => khinchine(group, coeffs, p),
        Command::Wminus1Scan { labels } => wminus1(labels),
        Command::Reproduce { criterion } => reproduce_cmd(*criterion, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_format = match cli.command {
        Command::Reproduce { .. } => Format::Text,
        Command::PairpartVerify { triangle: true, .. } => Format::Text,
        _ => Format::Json,
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = report
        .render(cli.format.unwrap_or(default_format))
        .and_then(|bytes| write_output(&bytes, cli.output.as_deref()))
        .and_then(|_| match &cli.emit_plotdata {
            Some(path) => write_plot(&report.plot, path),
            None => Ok(()),
        });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match report.failures.first() {
        Some(first) => {
            eprintln!("assertion failed ({} in total): {first}", report.failures.len());
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
