use endpoint_tails::asymptotics::tail_asym;
use endpoint_tails::density::{
    phat_joint, phat_joint_mfqr, tail_prob_with, DensityMethod, DensityRow, DensityTable,
};
use endpoint_tails::dotsenko::{w_dist, w_main_density};
use endpoint_tails::fredholm::{self, default_scale, log_f1_fredholm_with};
use endpoint_tails::numcore::airy_ai;
use endpoint_tails::painleve::{f1_painleve, q_hm_airy_kernel};
use endpoint_tails::Error;

use crate::pool::par_map;
use crate::table::{Table, Value};
use crate::{CommandKind, Failure, RunConfig};

type Rows = Vec<Vec<Value>>;

/// Evaluates `row` at every item and keeps input order. The first failure
/// in input order wins.
fn collect<T, F>(items: &[T], threads: usize, row: F) -> Result<Rows, Failure>
where
    T: Sync,
    F: Fn(&T) -> Result<Rows, Failure> + Sync,
{
    let mut out = Vec::new();
    for r in par_map(items, threads, row) {
        out.extend(r?);
    }
    Ok(out)
}

fn tw1(s: f64, nodes: usize) -> Result<Rows, Failure> {
    let at = |e: Error| Failure::at(format!("s = {s}"), e);
    let fr = log_f1_fredholm_with(s, nodes).map_err(at)?.exp();
    let pv = f1_painleve(s).map_err(at)?;
    Ok(vec![vec![
        s.into(),
        fr.into(),
        pv.into(),
        (fr - pv).abs().into(),
    ]])
}

fn qhm(s: f64, nodes: usize) -> Result<Rows, Failure> {
    let at = |e: Error| Failure::at(format!("s = {s}"), e);
    if !(s >= fredholm::MIN_S) {
        return Err(at(Error::InvalidArgument(format!(
            "below {}",
            fredholm::MIN_S
        ))));
    }
    let q = fredholm::sample_with(s, nodes, default_scale(s))
        .map_err(at)?
        .q;
    let qk = q_hm_airy_kernel(s, nodes).map_err(at)?;
    Ok(vec![vec![
        s.into(),
        q.into(),
        qk.into(),
        (q - qk).abs().into(),
        airy_ai(s).into(),
    ]])
}

fn density(t: f64) -> Result<Vec<DensityRow>, Failure> {
    let at = |e: Error| Failure::at(format!("t = {t}"), e);
    let mut rows = DensityTable::marginal(&[t], DensityMethod::Schehr)
        .map_err(at)?
        .rows;
    if t.abs() >= 1.0 {
        rows.extend(
            DensityTable::marginal(&[t], DensityMethod::Asymptotic)
                .map_err(at)?
                .rows,
        );
    }
    Ok(rows)
}

fn joint(&(m, t): &(f64, f64)) -> Result<Rows, Failure> {
    let at = |e: Error| Failure::at(format!("(m, t) = ({m}, {t})"), e);
    let a = phat_joint(m, t).map_err(at)?;
    let b = phat_joint_mfqr(m, t).map_err(at)?;
    Ok(vec![vec![
        m.into(),
        t.into(),
        a.into(),
        b.into(),
        (a - b).abs().into(),
    ]])
}

fn tail(t: f64, tol: f64) -> Result<Rows, Failure> {
    let at = |e: Error| Failure::at(format!("t = {t}"), e);
    let num = tail_prob_with(t, tol).map_err(at)?;
    let asym = tail_asym(t).map_err(at)?.value;
    Ok(vec![vec![
        t.into(),
        num.into(),
        asym.into(),
        (num / asym).into(),
    ]])
}

fn dotsenko(x: f64) -> Result<Rows, Failure> {
    let at = |e: Error| Failure::at(format!("x = {x}"), e);
    let w = w_dist(x).map_err(at)?.w;
    let tail = w_main_density(x).map_err(at)?.w;
    let cdf = 1.0 - tail;
    Ok(vec![vec![
        x.into(),
        w.into(),
        tail.into(),
        cdf.into(),
        (w - tail).abs().into(),
        (w - cdf).abs().into(),
    ]])
}

pub fn tabulate(cfg: &RunConfig, threads: usize) -> Result<Table, Failure> {
    let pts = cfg.grid.points();
    let (columns, rows): (&[&'static str], Rows) = match cfg.command {
        CommandKind::Tw1 => (
            &["s", "f1_fredholm", "f1_painleve", "abs_diff"],
            collect(&pts, threads, |s| tw1(*s, cfg.nodes))?,
        ),
        CommandKind::Qhm => (
            &["s", "q_resolvent", "q_airy_kernel", "abs_diff", "airy_ai"],
            collect(&pts, threads, |s| qhm(*s, cfg.nodes))?,
        ),
        CommandKind::Density => {
            let mut table = DensityTable::default();
            for r in par_map(&pts, threads, |t| density(*t)) {
                table.rows.extend(r?);
            }
            table
                .check_invariants()
                .map_err(|e| Failure::Numeric(format!("in the density table: {e}")))?;
            let rows = table
                .rows
                .into_iter()
                .map(|r| {
                    vec![
                        r.t.into(),
                        r.value.into(),
                        r.method.name().into(),
                        r.error_estimate.into(),
                    ]
                })
                .collect();
            (&["t", "value", "method", "error_estimate"], rows)
        }
        CommandKind::Joint => {
            let pairs: Vec<(f64, f64)> = pts
                .iter()
                .flat_map(|m| pts.iter().map(move |t| (*m, *t)))
                .collect();
            (
                &["m", "t", "phat_schehr", "phat_mfqr", "abs_diff"],
                collect(&pairs, threads, joint)?,
            )
        }
        CommandKind::Tail => (
            &["t", "tail_numeric", "tail_asymptotic", "ratio"],
            collect(&pts, threads, |t| tail(*t, cfg.tol))?,
        ),
        CommandKind::Dotsenko => (
            &[
                "x",
                "w_dotsenko",
                "tail_main",
                "cdf_main",
                "abs_diff_tail",
                "abs_diff_cdf",
            ],
            collect(&pts, threads, |x| dotsenko(*x))?,
        ),
        CommandKind::Xcheck => unreachable!("xcheck builds its own table"),
    };
    let mut table = Table::new(columns);
    table.rows = rows;
    Ok(table)
}
