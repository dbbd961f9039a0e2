use std::path::Path;

use num_rational::BigRational;
use wigner_lab::bounds::{divergence_sweep, ln_grid};
use wigner_lab::combinatorics::{
    bounded_children_lower_bound, catalan, stirling_check, DegreeBound, Prefactor,
};
use wigner_lab::ensemble::{
    mc_trace_moment, mc_trace_moment_partitioned, sample_matrix, EntryLaw, McConfig, TruncationRule,
};
use wigner_lab::numeric::{ln_biguint, rational_to_f64};
use wigner_lab::validation::{criteria, Faults};
use wigner_lab::walks::{exact_moment, exact_moment_f64, semicircle_leading_term, MomentProfile};
use wigner_lab::witness::{
    family_count, family_walks, validate_witness, write_walk_dump, EdgeDistance, WitnessParams,
};

use crate::args::*;
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::table::{emit, write_atomic, Cell, Format, Table};

pub const EXACT_HEADER: &[&str] = &["s", "exact", "value", "normalized", "leading"];
pub const MC_HEADER: &[&str] = &[
    "n", "s", "trials", "epsilon", "u_n", "seed", "estimate", "stderr",
];
pub const WITNESS_HEADER: &[&str] = &[
    "s_pp",
    "d0",
    "D",
    "nu2",
    "L",
    "extra",
    "distance",
    "feasible",
    "walks",
    "valid",
    "rejected",
    "exact_count",
    "ln_exact",
    "ln_bound",
    "bound_status",
    "failures",
];
pub const SWEEP_HEADER: &[&str] = &[
    "ln_n",
    "s",
    "L",
    "s_prime",
    "s_pp",
    "D",
    "d0",
    "sigma",
    "log_bound",
    "normalized",
    "weight",
    "tilde_t",
    "selection",
    "nu2_sum",
    "class_count",
    "n_power",
    "core_weight",
    "truncation",
    "trips",
    "normalization",
    "flags",
];
pub const COMBINATORICS_HEADER: &[&str] = &[
    "s",
    "d0",
    "catalan",
    "bounded",
    "bound_two_s_plus_one",
    "bound_s",
    "stirling_holds",
];
pub const VALIDATE_HEADER: &[&str] =
    &["id", "name", "passed", "seconds", "limit_seconds", "detail"];

pub struct Globals {
    pub seed: u64,
    pub output: Option<std::path::PathBuf>,
    pub format: Option<Format>,
}

impl Globals {
    fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    fn emit(&self, table: &Table) -> CliResult<()> {
        emit(&table.render(self.format()), self.output.as_deref())
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let g = Globals {
        seed: cfg.pick_or(cli.seed, "seed", 1)?,
        output: cfg.pick(cli.output, "output")?,
        format: cfg.pick(cli.format, "format")?,
    };
    match cli.command {
        Command::ExactMoments(a) => exact_moments(&cfg, &g, a),
        Command::Mc(a) => mc(&cfg, &g, a),
        Command::Witness(a) => witness(&cfg, &g, a),
        Command::Sweep(a) => sweep(&cfg, &g, a),
        Command::Combinatorics(a) => combinatorics(&cfg, &g, a),
        Command::Validate(a) => validate(&g, a),
    }
}

fn exact_moments(cfg: &Config, g: &Globals, a: ExactMomentsArgs) -> CliResult<()> {
    let n: u64 = cfg.require(a.n, "n")?;
    let s_max: usize = cfg.require(a.s_max, "s_max")?;
    let profile = cfg.pick_or(a.profile, "profile", ProfileChoice::Ones)?;
    let m = match profile {
        ProfileChoice::Ones => MomentProfile::ones(),
        ProfileChoice::HeavyTail => match cfg.pick::<String>(a.u, "u")? {
            Some(u) => {
                let u: BigRational = u
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("--u must be a rational, got '{u}'")))?;
                MomentProfile::heavy_tail_exact(u)?
            }
            None => {
                let eps = cfg.pick_or(a.epsilon, "epsilon", 0.1)?;
                MomentProfile::heavy_tail(TruncationRule::for_dimension(n, eps)?.u_n)?
            }
        },
    };
    let v2 = m.even_moment(1)?;
    let mut t = Table::new(EXACT_HEADER);
    for s in 1..=s_max {
        let (exact, value) = match exact_moment(n, s, &m) {
            Ok(q) => (Cell::Text(q.to_string()), rational_to_f64(&q)),
            Err(wigner_lab::Error::NotRational { .. }) => {
                (Cell::Empty, exact_moment_f64(n, s, &m)?)
            }
            Err(e) => return Err(e.into()),
        };
        let leading = match semicircle_leading_term(s, &m) {
            Ok(q) => Cell::Real(rational_to_f64(&q)),
            Err(wigner_lab::Error::NotRational { .. }) => Cell::Empty,
            Err(e) => return Err(e.into()),
        };
        let normalized = value / (4.0 * v2).powi(s as i32);
        t.push(vec![
            s.into(),
            exact,
            value.into(),
            normalized.into(),
            leading,
        ]);
    }
    g.emit(&t)
}

fn mc(cfg: &Config, g: &Globals, a: McArgs) -> CliResult<()> {
    let n: usize = cfg.require(a.n, "n")?;
    let s: u32 = cfg.require(a.s, "s")?;
    let trials = cfg.pick_or(a.trials, "trials", 10_000)?;
    let law = match cfg.pick_or(a.law, "law", LawChoice::HeavyTail)? {
        LawChoice::HeavyTail => EntryLaw::heavy_tail(),
        LawChoice::Rademacher => EntryLaw::Rademacher,
    };
    let truncate = !cfg.flag(a.no_truncation, "no_truncation")?;
    let eps = cfg.pick_or(a.epsilon, "epsilon", 0.1)?;
    let rule = truncate
        .then(|| TruncationRule::for_dimension(n as u64, eps))
        .transpose()?;
    let mc = McConfig {
        n,
        s,
        trials,
        law: &law,
        rule: rule.as_ref(),
        master_seed: g.seed,
    };
    let est = match cfg.pick::<usize>(a.workers, "workers")? {
        Some(w) => mc_trace_moment_partitioned(&mc, w)?,
        None => mc_trace_moment(&mc)?,
    };
    if let Some(path) = cfg.pick(a.dump_matrix, "dump_matrix")? {
        let m = sample_matrix(n, &law, rule.as_ref(), g.seed);
        write_atomic(&path, &m.dump())?;
    }
    let mut t = Table::new(MC_HEADER);
    t.push(vec![
        n.into(),
        s.into(),
        trials.into(),
        if truncate {
            Cell::Real(eps)
        } else {
            Cell::Empty
        },
        rule.map(|r| r.u_n).into(),
        g.seed.into(),
        est.estimate.into(),
        est.standard_error.into(),
    ]);
    g.emit(&t)
}

fn witness(cfg: &Config, g: &Globals, a: WitnessArgs) -> CliResult<()> {
    let d0 = cfg.pick_or(a.d0, "d0", 3)?;
    let extra = cfg.pick_or(a.extra, "extra", 0)?;
    let distance = match cfg.pick_or(a.distance, "distance", DistanceChoice::Min)? {
        DistanceChoice::Min => EdgeDistance::MinEndpoint,
        DistanceChoice::Far => EdgeDistance::FarEndpoint,
    };
    let mut t = Table::new(WITNESS_HEADER);
    if cfg.flag(a.grid, "grid")? {
        let s_pp_max = cfg.pick_or(a.s_pp_max, "s_pp_max", 4)?;
        let big_d_max = cfg.pick_or(a.big_d_max, "big_d_max", 2)?;
        let nu2_max = cfg.pick_or(a.nu2_max, "nu2_max", 1)?;
        let l_span = cfg.pick_or(a.l_span, "l_span", 3)?;
        for s_pp in 1..=s_pp_max {
            for big_d in 1..=big_d_max {
                for nu2 in 0..=nu2_max {
                    for l in big_d..=big_d + l_span {
                        let tuple = [s_pp, d0, big_d, nu2, l, extra];
                        match WitnessParams::with_extra(s_pp, d0, big_d, nu2, l, extra) {
                            Ok(p) => t.push(witness_row(&p.with_distance(distance), None)?),
                            Err(_) => t.push(infeasible_row(tuple, distance)),
                        }
                    }
                }
            }
        }
    } else {
        let p = WitnessParams::with_extra(
            cfg.require(a.s_pp, "s_pp")?,
            d0,
            cfg.require(a.big_d, "big_d")?,
            cfg.pick_or(a.nu2, "nu2", 0)?,
            cfg.require(a.l, "l")?,
            extra,
        )?
        .with_distance(distance);
        let dump = cfg.pick::<std::path::PathBuf>(a.dump, "dump")?;
        t.push(witness_row(&p, dump.as_deref())?);
    }
    g.emit(&t)
}

fn distance_name(d: EdgeDistance) -> &'static str {
    match d {
        EdgeDistance::MinEndpoint => "min",
        EdgeDistance::FarEndpoint => "far",
    }
}

fn infeasible_row(tuple: [usize; 6], distance: EdgeDistance) -> Vec<Cell> {
    let mut row: Vec<Cell> = tuple.iter().map(|&v| v.into()).collect();
    row.push(distance_name(distance).into());
    row.push(false.into());
    row.extend(std::iter::repeat_n(
        Cell::Empty,
        WITNESS_HEADER.len() - row.len(),
    ));
    row
}

fn witness_row(p: &WitnessParams, dump: Option<&Path>) -> CliResult<Vec<Cell>> {
    let walks = family_walks(p)?;
    let failures: Vec<String> = walks
        .iter()
        .filter_map(|(_, w)| {
            let r = validate_witness(w, p);
            (!r.passed()).then(|| format!("{w}: {}", r.failures().join("; ")))
        })
        .collect();
    if let Some(path) = dump {
        write_atomic(path, &write_walk_dump(p, walks.iter().map(|(_, w)| w)))?;
    }
    let fc = family_count(p)?;
    let ln_exact = ln_biguint(&fc.exact);
    let ln_bound = fc.lower_bound.ln();
    let status = match ln_bound {
        None => "not applicable",
        Some(b) if ln_exact >= b => "holds",
        Some(_) => "violated",
    };
    Ok(vec![
        p.s_pp.into(),
        p.d0.get().into(),
        p.big_d.into(),
        p.nu2.into(),
        p.l.into(),
        p.extra.into(),
        distance_name(p.distance).into(),
        true.into(),
        walks.len().into(),
        (failures.is_empty() && fc.consistent()).into(),
        fc.rejected.into(),
        fc.exact.to_string().into(),
        ln_exact.into(),
        ln_bound.into(),
        status.into(),
        failures.len().into(),
    ])
}

fn sweep(cfg: &Config, g: &Globals, a: SweepArgs) -> CliResult<()> {
    let theta = cfg.pick_or(a.theta, "theta", 1.0)?;
    let eps = cfg.pick_or(a.epsilon, "epsilon", 0.25)?;
    let eps_p = cfg.pick_or(a.epsilon_prime, "epsilon_prime", 0.2)?;
    let start = cfg.pick_or(a.ln_start, "ln_start", 10.0)?;
    let stop = cfg.pick_or(a.ln_stop, "ln_stop", 100.0)?;
    let step = cfg.pick_or(a.ln_step, "ln_step", 0.5)?;
    if step.is_nan() || step <= 0.0 {
        return Err(CliError::Usage("--ln-step must be positive".into()));
    }
    let grid = ln_grid(start, stop, step);
    let sweep = divergence_sweep(theta, eps, eps_p, &grid, &EntryLaw::heavy_tail())?;
    let mut t = Table::new(SWEEP_HEADER);
    for row in &sweep.rows {
        let b = &row.breakdown;
        let d = &b.derived;
        t.push(vec![
            b.input.ln_n.into(),
            d.s.into(),
            d.l.into(),
            d.s_prime.into(),
            d.s_pp.into(),
            d.big_d.into(),
            d.d0.into(),
            d.sigma.into(),
            b.log_bound().into(),
            b.normalized().into(),
            b.weight.into(),
            b.tilde_t.into(),
            b.selection.into(),
            b.nu2_sum.into(),
            b.class_count.into(),
            b.n_power.into(),
            b.core_weight.into(),
            b.truncation.into(),
            b.trips.into(),
            b.normalization.into(),
            b.flags.to_string().into(),
        ]);
    }
    g.emit(&t)
}

fn combinatorics(cfg: &Config, g: &Globals, a: CombinatoricsArgs) -> CliResult<()> {
    let s_max = cfg.pick_or(a.s_max, "s_max", 20)?;
    let d0 = cfg.pick_or(a.d0, "d0", 3)?;
    let d = DegreeBound::new(d0)?;
    let table = wigner_lab::combinatorics::bounded_children_table(s_max, d);
    let mut t = Table::new(COMBINATORICS_HEADER);
    for (s, bounded) in table.iter().enumerate() {
        let b1 = bounded_children_lower_bound(s as u64, d0 as f64, Prefactor::TwoSPlusOne);
        let b2 = bounded_children_lower_bound(s as u64, d0 as f64, Prefactor::S);
        let stirling = (s >= 1).then(|| stirling_check(s as u64).holds());
        t.push(vec![
            s.into(),
            d0.into(),
            catalan(s as u64).to_string().into(),
            bounded.to_string().into(),
            b1.value().into(),
            b2.value().into(),
            stirling.map_or(Cell::Empty, Cell::Bool),
        ]);
    }
    g.emit(&t)
}

fn validate(g: &Globals, a: ValidateArgs) -> CliResult<()> {
    let faults = Faults {
        catalan_off_by_one: a.inject_fault == Some(Fault::CatalanOffByOne),
    };
    let selected: Vec<_> = criteria()
        .into_iter()
        .filter(|c| a.only.as_ref().is_none_or(|ids| ids.contains(&c.id)))
        .collect();
    if selected.is_empty() {
        return Err(CliError::Usage("no criterion matches --only".into()));
    }
    let outcomes: Vec<_> = selected.iter().map(|c| c.run(&faults)).collect();
    let text = match g.format {
        None => outcomes.iter().map(|o| o.line() + "\n").collect::<String>(),
        Some(f) => {
            let mut t = Table::new(VALIDATE_HEADER);
            for o in &outcomes {
                t.push(vec![
                    o.id.into(),
                    o.name.into(),
                    o.passed.into(),
                    o.elapsed.as_secs_f64().into(),
                    o.limit.as_secs().into(),
                    o.detail.clone().into(),
                ]);
            }
            t.render(f)
        }
    };
    emit(&text, g.output.as_deref())?;
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("[{}] {}", o.id, o.name))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(failed.join(", ")))
    }
}
