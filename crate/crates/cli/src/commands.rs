use std::time::Instant;

use rayon::prelude::*;

use pitgf::brion::{
    order_independence_check, ordered_vertex_sum, sq_direct, vertex_sum_general, vertex_sum_m0, window_base, BrionError,
    InterleavingOrder,
};
use pitgf::partition::config_battery;
use pitgf::{compute, Method, Partition, PitConfig, QSeries};

use crate::args::{BrionArgs, ChiArgs, ConfigArgs, CrosscheckArgs, Format};
use crate::report::{
    BrionCheck, BrionReport, ChiReport, Coefficients, ConfigEcho, ConfigVerdicts, CrosscheckReport, Verdict,
};

/// How a command ended; maps onto the process exit code.
#[derive(Debug)]
pub enum Outcome {
    Agree(String),
    Diverge(String),
    Usage(String),
}

pub struct Options {
    pub format: Format,
    pub timing: bool,
}

const DESK_MAX_NM: i64 = 3;
const DESK_MAX_PART: u32 = 4;
const DESK_MAX_ORDER: i64 = 24;
const DESK_MAX_ORACLE_ORDER: i64 = 10;

fn parse_config(args: &ConfigArgs) -> Result<PitConfig, String> {
    let part = |name: &str, s: &str| s.parse::<Partition>().map_err(|e| format!("--{name}: {e}"));
    let nu = part("nu", &args.nu)?;
    let mu = part("mu", &args.mu)?;
    let lambda = part("lambda", &args.lambda)?;
    PitConfig::new(args.n, args.m, nu, mu, lambda).map_err(|e| e.to_string())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn elapsed(start: Instant, opts: &Options) -> Option<u128> {
    opts.timing.then(|| start.elapsed().as_millis())
}

pub fn chi(args: &ChiArgs, opts: &Options) -> Outcome {
    let start = Instant::now();
    let config = match parse_config(&args.config) {
        Ok(c) => c,
        Err(e) => return Outcome::Usage(e),
    };
    if args.order < 0 {
        return Outcome::Usage("--order must be nonnegative".into());
    }
    let method = Method::from(args.method);
    let series = match compute(method, &config, args.order) {
        Ok(s) => s,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    let report = ChiReport {
        config: ConfigEcho::from(&config),
        method: method.to_string(),
        series: Coefficients::of(&series),
        elapsed_ms: elapsed(start, opts),
    };
    Outcome::Agree(match opts.format {
        Format::Json => json(&report),
        Format::Csv => report.series.csv(),
    })
}

fn compare(a: &QSeries, b: &QSeries, order: i64) -> (bool, Option<i64>) {
    let (a, b) = (a.truncate(order), b.truncate(order));
    let divergence = a.first_divergence(&b);
    (divergence.is_none(), divergence)
}

fn check_config(config: &PitConfig, methods: &[Method], order: i64) -> ConfigVerdicts {
    let applicable: Vec<Method> = methods.iter().copied().filter(|m| m.applies_to(config)).collect();
    let results: Vec<(Method, Result<QSeries, String>)> =
        applicable.iter().map(|&m| (m, compute(m, config, order).map_err(|e| e.to_string()))).collect();
    let mut verdicts = Vec::new();
    for (i, (ma, ra)) in results.iter().enumerate() {
        for (mb, rb) in &results[i + 1..] {
            let pair = (ma.to_string(), mb.to_string());
            let verdict = match (ra, rb) {
                (Ok(a), Ok(b)) => {
                    let (agree, first_divergence) = compare(a, b, order);
                    Verdict { pair, agree, first_divergence, error: None }
                }
                (Err(e), _) | (_, Err(e)) => Verdict { pair, agree: false, first_divergence: None, error: Some(e.clone()) },
            };
            verdicts.push(verdict);
        }
    }
    ConfigVerdicts { config: ConfigEcho::from(config), verdicts }
}

pub fn crosscheck(args: &CrosscheckArgs, opts: &Options) -> Outcome {
    let start = Instant::now();
    let mut methods: Vec<Method> = args.methods.iter().map(|&m| Method::from(m)).collect();
    methods.sort();
    methods.dedup();
    if args.order < 0 {
        return Outcome::Usage("--order must be nonnegative".into());
    }
    if !args.force {
        let oracle_limit = methods.contains(&Method::Oracle) && args.order > DESK_MAX_ORACLE_ORDER;
        if args.max_n > DESK_MAX_NM || args.max_m > DESK_MAX_NM || args.max_part > DESK_MAX_PART || args.order > DESK_MAX_ORDER || oracle_limit {
            return Outcome::Usage(format!(
                "battery exceeds desk scale (n, m <= {DESK_MAX_NM}, parts <= {DESK_MAX_PART}, order <= {DESK_MAX_ORDER}, \
                 oracle order <= {DESK_MAX_ORACLE_ORDER}); pass --force to run it anyway"
            ));
        }
    }
    let battery = config_battery(args.max_n, args.max_m, args.max_part);
    let results: Vec<ConfigVerdicts> = battery.par_iter().map(|c| check_config(c, &methods, args.order)).collect();
    let divergent: Vec<ConfigVerdicts> = results.iter().filter(|r| !r.agree()).cloned().collect();
    let report = CrosscheckReport {
        methods: methods.iter().map(Method::to_string).collect(),
        order: args.order,
        configs: battery.len(),
        agree: divergent.is_empty(),
        minimal_counterexample: divergent.first().cloned(),
        divergent,
        elapsed_ms: elapsed(start, opts),
    };
    let mut lines = Vec::new();
    match opts.format {
        Format::Json => {
            if args.verbose {
                lines.extend(results.iter().map(json));
            }
            lines.push(json(&report));
        }
        Format::Csv => {
            lines.push("n,m,nu,mu,lambda,first,second,agree,first_divergence".to_string());
            for r in &results {
                if !args.verbose && r.agree() {
                    continue;
                }
                for v in &r.verdicts {
                    lines.push(format!(
                        "{},{},\"{}\",\"{}\",\"{}\",{},{},{},{}",
                        r.config.n,
                        r.config.m,
                        r.config.nu,
                        r.config.mu,
                        r.config.lambda,
                        v.pair.0,
                        v.pair.1,
                        v.agree,
                        v.first_divergence.map_or(String::new(), |e| e.to_string())
                    ));
                }
            }
        }
    }
    let text = lines.join("\n");
    if report.agree {
        Outcome::Agree(text)
    } else {
        Outcome::Diverge(text)
    }
}

fn brion_check(name: &str, direct: &QSeries, other: &QSeries, inside_window: Option<bool>) -> BrionCheck {
    let divergence = direct.first_divergence(other);
    BrionCheck { name: name.to_string(), agree: divergence.is_none(), first_divergence: divergence, inside_window }
}

pub fn brion(args: &BrionArgs, opts: &Options) -> Outcome {
    let start = Instant::now();
    let config = match parse_config(&args.config) {
        Ok(c) => c,
        Err(e) => return Outcome::Usage(e),
    };
    let (n, m) = (config.n(), config.m());
    let cols = args.cols;
    let rows = args.rows.unwrap_or(if m == 0 { n as i64 + 1 } else { cols });
    let usage = |e: BrionError| Outcome::Usage(e.to_string());
    let direct = match sq_direct(&config, cols, rows, args.order) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let vertex = if m == 0 {
        vertex_sum_m0(n, config.nu(), config.lambda(), cols, args.order)
    } else {
        vertex_sum_general(&config, cols, rows, args.order)
    };
    let vertex = match vertex {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let mut checks = vec![brion_check("vertex_sum", &direct, &vertex, None)];
    let interlacing = InterleavingOrder::nu_first(n, m);
    match ordered_vertex_sum(&config, cols, rows, &interlacing, args.order) {
        Ok(s) => checks.push(brion_check("ribbon_cones", &direct, &s, None)),
        Err(e) => return usage(e),
    }
    if n > 0 && m > 0 {
        match order_independence_check(&config, cols, rows, args.order, &interlacing, &InterleavingOrder::mu_first(n, m)) {
            Ok(cmp) => checks.push(brion_check("order_independence", &cmp.first, &cmp.second, Some(cmp.inside_window))),
            Err(e) => return usage(e),
        }
    }
    let report = BrionReport {
        config: ConfigEcho::from(&config),
        cols,
        rows,
        base: window_base(&config, cols, rows),
        series: Coefficients::of(&direct),
        checks,
        elapsed_ms: elapsed(start, opts),
    };
    let text = match opts.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = String::from("check,agree,first_divergence\n");
            for c in &report.checks {
                out.push_str(&format!("{},{},{}\n", c.name, c.agree, c.first_divergence.map_or(String::new(), |e| e.to_string())));
            }
            out
        }
    };
    if report.agree() {
        Outcome::Agree(text)
    } else {
        Outcome::Diverge(text)
    }
}
