//! The check registry. Each entry compares one formula (or one pair of our own
//! routes) over the configured ranges.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::compare::{q, slice_sum_note, Cmp, Vars};
use super::{CheckResult, Status, SuiteConfig};
use crate::algebra::rational::{abs, from_big, int, rat, to_pq, Rational};
use crate::algebra::Jet;
use crate::bargraph::{enumerate_setpartitions, Bargraph, CornerKind};
use crate::census::{census_bargraphs, census_setpartitions, CensusRecord, CensusTable, StirlingBellTable};
use crate::error::Result;
use crate::gf::setpart::{inv_factorial, phi};
use crate::gf::{one_minus, poly, type_a, type_b, JetSeries, Marking, RatSeries};

pub(crate) const ASYMPTOTIC_WINDOW: usize = 5;
/// Height bounds `N` exercised by the restricted checks.
const HMAX_CHECKED: usize = 4;
/// Block counts for the bivariate set-partition checks.
const K_BIVARIATE: usize = 4;
/// Block counts for the univariate set-partition checks.
const K_SERIES: usize = 6;

const EXAMPLE_WORD: &str = "244411322";
const EXAMPLE_A: [(u32, u32); 2] = [(3, 2), (1, 2)];
const EXAMPLE_B: [(u32, u32); 2] = [(3, 3), (1, 1)];

pub(crate) struct Ctx {
    cfg: SuiteConfig,
    bars: CensusTable,
    // indexed by the height bound N; slot 0 unused
    bars_h: Vec<CensusTable>,
    sp: CensusTable,
    // (blocks, cells, letters)
    sp_cells: BTreeMap<(usize, usize, usize), CensusRecord>,
    table: StirlingBellTable,
}

impl Ctx {
    pub fn new(cfg: SuiteConfig) -> Ctx {
        let bars_h = (0..=HMAX_CHECKED)
            .into_par_iter()
            .map(|n| {
                if n == 0 {
                    CensusTable::default()
                } else {
                    census_bargraphs(cfg.xcap, Some(n as u32))
                }
            })
            .collect();
        Ctx {
            bars: census_bargraphs(cfg.xcap, None),
            bars_h,
            sp: census_setpartitions(cfg.setpart_n_max),
            sp_cells: setpart_by_cells(cfg.setpart_n_max.min(cfg.ycap), cfg.xcap),
            table: StirlingBellTable::new(cfg.setpart_n_max + 3),
            cfg,
        }
    }

    fn spy(&self) -> usize {
        self.cfg.setpart_n_max.min(self.cfg.ycap)
    }

    fn kmax(&self) -> usize {
        K_SERIES.min(self.cfg.setpart_n_max)
    }

    fn singles(&self) -> Vec<(usize, usize)> {
        let m = self.cfg.vw_max;
        (1..=m).flat_map(|v| (1..=m).map(move |w| (v, w))).collect()
    }

    fn markings(&self) -> Vec<Marking> {
        let mut out = vec![Marking::Unmarked, Marking::All];
        out.extend(self.singles().into_iter().map(|(v, w)| single(v, w)));
        out
    }

    fn markings_label(&self) -> String {
        format!("markings unmarked, all, single(v,w) for v,w<={}", self.cfg.vw_max)
    }

    fn caps(&self) -> String {
        format!("cells<={}, columns<={}", self.cfg.xcap, self.cfg.ycap)
    }
}

fn single(v: usize, w: usize) -> Marking {
    Marking::Single { v: v as u32, w: w as u32 }
}

fn setpart_by_cells(n_max: usize, cells_max: usize) -> BTreeMap<(usize, usize, usize), CensusRecord> {
    let parts: Vec<BTreeMap<(usize, usize, usize), CensusRecord>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut m: BTreeMap<(usize, usize, usize), CensusRecord> = BTreeMap::new();
            for w in enumerate_setpartitions(n, None) {
                let g = w.as_bargraph();
                if g.cells() <= cells_max {
                    m.entry((w.blocks() as usize, g.cells(), n)).or_default().tally(&g);
                }
            }
            m
        })
        .collect();
    let mut out = BTreeMap::new();
    for p in parts {
        out.extend(p);
    }
    out
}

fn field(r: Option<&CensusRecord>, f: &dyn Fn(&CensusRecord) -> u64) -> Rational {
    q(r.map_or(0, f))
}

/// Census values on the `(n, k)` grid as a series.
fn census_grid(t: &CensusTable, xcap: usize, ycap: usize, f: &dyn Fn(&CensusRecord) -> u64) -> RatSeries {
    RatSeries::from_fn(xcap, ycap, |n, k| field(t.get(n, k), f))
}

/// Census values summed over `k`, as a series in `x` alone.
fn census_by_n(t: &CensusTable, xcap: usize, f: &dyn Fn(&CensusRecord) -> u64) -> RatSeries {
    RatSeries::from_fn(xcap, 0, |n, _| q(f(&t.by_n(n))))
}

fn census_jets(t: &CensusTable, xcap: usize, ycap: usize, m: Marking, kind: CornerKind) -> JetSeries {
    JetSeries::from_fn(xcap, ycap, |n, k| {
        let r = t.get(n, k);
        Jet::new(field(r, &|r| r.count), field(r, &|r| marked_count(r, m, kind)))
    })
}

fn marked_count(r: &CensusRecord, m: Marking, kind: CornerKind) -> u64 {
    match m {
        Marking::Unmarked => 0,
        Marking::All => r.total(kind),
        Marking::Single { v, w } => r.per_ab(kind, v, w),
    }
}

fn total_of(kind: CornerKind) -> impl Fn(&CensusRecord) -> u64 {
    move |r| r.total(kind)
}

/// `(1 − x)/(1 − x − xy)`.
fn all_bargraphs(xcap: usize, ycap: usize) -> Result<JetSeries> {
    let d: JetSeries = poly(xcap, ycap, &[(0, 0, 1), (1, 0, -1), (1, 1, -1)]);
    Ok(&one_minus::<Jet>(xcap, ycap, 1, 0) * &d.inverse()?)
}

pub(crate) struct Outcome {
    cmp: Cmp,
    ranges: String,
    diags: Vec<String>,
    status: Option<Status>,
}

impl Outcome {
    fn new(cmp: Cmp, ranges: impl Into<String>) -> Outcome {
        Outcome {
            cmp,
            ranges: ranges.into(),
            diags: Vec::new(),
            status: None,
        }
    }

    fn with_diags(mut self, diags: Vec<String>) -> Outcome {
        self.diags = diags;
        self
    }
}

type CheckFn = Box<dyn Fn(&Ctx) -> Result<Outcome> + Send + Sync>;

pub(crate) struct Entry {
    pub id: &'static str,
    pub internal: bool,
    run: CheckFn,
}

impl Entry {
    pub fn run(&self, ctx: &Ctx) -> Result<CheckResult> {
        let o = (self.run)(ctx)?;
        let status = match (&o.cmp.first, o.status) {
            (None, _) => Status::Match,
            (Some(_), Some(s)) => s,
            (Some(_), None) => Status::Mismatch,
        };
        let mut diags = o.diags;
        diags.insert(0, format!("{} coefficients compared", o.cmp.compared));
        Ok(CheckResult {
            formula_id: self.id.to_string(),
            status,
            first_discrepancy: o.cmp.first,
            ranges_checked: o.ranges,
            internal: self.internal,
            diagnostics: diags,
        })
    }
}

fn internal(id: &'static str, f: impl Fn(&Ctx) -> Result<Outcome> + Send + Sync + 'static) -> Entry {
    Entry {
        id,
        internal: true,
        run: Box::new(f),
    }
}

fn printed(id: &'static str, f: impl Fn(&Ctx) -> Result<Outcome> + Send + Sync + 'static) -> Entry {
    Entry {
        id,
        internal: false,
        run: Box::new(f),
    }
}

/// Formula ids in report order.
pub fn formula_ids() -> Vec<&'static str> {
    registry().iter().map(|s| s.id).collect()
}

pub(crate) fn registry() -> Vec<Entry> {
    use CornerKind::{A, B};
    const A_LINES: [&str; 6] = [
        "A/Q_k(1,t) line1",
        "A/Q_k(1,t) line2",
        "A/Q_k(1,t) line3",
        "A/Q_k(1,t) line4",
        "A/Q_k(1,t) line5",
        "A/Q_k(1,t) line6",
    ];
    const B_LINES: [&str; 3] = ["B/Q_k(1,t) line1", "B/Q_k(1,t) line2", "B/Q_k(1,t) line3"];

    let mut r = vec![
        // type A: our own routes
        internal("A/solver-vs-census", |c| solver_vs_census(c, A)),
        internal("A/H-closed-form", |c| closed_vs_solver(c, A)),
        internal("A/H_a-closed-form", per_column_a),
        internal("A/H^(N)-closed-form", |c| restricted_closed(c, A)),
        internal("A/H^(N)-vs-census", |c| restricted_vs_census(c, A)),
        internal("A/unmarked-collapse", |c| unmarked_collapse(c, A)),
        internal("A/H^(2)-constructive", h2_constructive),
        internal("A/P_k-product", |c| pk_product(c, A)),
        // type A: printed forms
        printed("A/F-all", |c| f_all(c, A)),
        printed("A/F-single", |c| f_single(c, A)),
        printed("A/G(x,y)", |c| {
            let got = type_a::printed_g(c.cfg.xcap, c.cfg.ycap)?;
            Ok(grid_check(c, &got, &total_of(A), ""))
        }),
        printed("A/G(x,1)", |c| Ok(by_n_check(c, &type_a::printed_g_x1(c.cfg.xcap)?, &total_of(A)))),
        printed("A/g_n", g_n),
        printed("A/T(x,y)", |c| t_xy(c, A)),
        printed("A/T(x,1)", |c| t_x1(c, A)),
        printed("A/t_n", t_n),
        printed("A/H^(1)", h1),
        printed("A/H^(2)", h2),
        printed("A/Q_k(x,y)", |c| qk_xy(c, A)),
        printed("A/phi'", phi_prime),
    ];
    for (i, id) in A_LINES.into_iter().enumerate() {
        r.push(printed(id, move |c| qk_line(c, A, i)));
    }
    r.extend([
        printed("A/Q~_k(t)", |c| egf_qk(c, A)),
        printed("A/Q~(t,y)", |c| egf_q(c, A)),
        printed("A/dQ~/dt line1", |c| dq_dt(c, A, 0)),
        printed("A/dQ~/dt line2", |c| dq_dt(c, A, 1)),
        printed("A/setpart-total-printed", |c| setpart_total(c, A, true)),
        printed("A/setpart-total-derived", |c| setpart_total(c, A, false)),
        printed("A/setpart-bell-printed", |c| setpart_bell(c, A, true)),
        printed("A/setpart-bell-derived", |c| setpart_bell(c, A, false)),
        printed("A/example-corners", |_| example_corners(A)),
        // type B: our own routes
        internal("B/solver-vs-census", |c| solver_vs_census(c, B)),
        internal("B/J-closed-form", |c| closed_vs_solver(c, B)),
        internal("B/J_a-closed-form", per_column_b),
        internal("B/J^(N)_a-closed-form", |c| restricted_closed(c, B)),
        internal("B/J^(N)-vs-census", |c| restricted_vs_census(c, B)),
        internal("B/unmarked-collapse", |c| unmarked_collapse(c, B)),
        internal("B/P_k-product", |c| pk_product(c, B)),
        // type B: printed forms
        printed("B/F-all", |c| f_all(c, B)),
        printed("B/F-single", |c| f_single(c, B)),
        printed("B/H(x,y)", |c| {
            let got = type_b::printed_h(c.cfg.xcap, c.cfg.ycap)?;
            Ok(grid_check(c, &got, &total_of(B), ""))
        }),
        printed("B/H(x,1)", |c| Ok(by_n_check(c, &type_b::printed_h_x1(c.cfg.xcap)?, &total_of(B)))),
        printed("B/T(x,y)", |c| t_xy(c, B)),
        printed("B/T(x,1)", |c| t_x1(c, B)),
        printed("B/J^(1)", j1),
        printed("B/dJ^(N)/dp", dj_dp),
        printed("B/J_N^(N)(x,y,1)", j_n_unmarked),
        printed("B/dJ_N^(N)/dp", dj_n_dp),
        printed("B/dJ_N^(N)/dp(1,t)", dj_n_dp_1t),
        printed("B/Q_k(x,y)", |c| qk_xy(c, B)),
    ]);
    for (i, id) in B_LINES.into_iter().enumerate() {
        r.push(printed(id, move |c| qk_line(c, B, i)));
    }
    r.extend([
        printed("B/Q~_k(t)", |c| egf_qk(c, B)),
        printed("B/Q~(t,y)", |c| egf_q(c, B)),
        printed("B/dQ~/dt line1", |c| dq_dt(c, B, 0)),
        printed("B/dQ~/dt line2", |c| dq_dt(c, B, 1)),
        printed("B/setpart-total-printed", |c| setpart_total(c, B, true)),
        printed("B/setpart-total-derived", |c| setpart_total(c, B, false)),
        printed("B/setpart-bell-printed", |c| setpart_bell(c, B, true)),
        printed("B/setpart-bell-derived", |c| setpart_bell(c, B, false)),
        printed("B/example-corners", |_| example_corners(B)),
        internal("A-B/corner-count-invariant", count_invariant),
    ]);
    r
}

fn solve(c: &Ctx, kind: CornerKind, m: Marking, hmax: Option<usize>) -> Result<(JetSeries, Vec<JetSeries>)> {
    solve_at(c.cfg.xcap, c.cfg.ycap, kind, m, hmax)
}

fn solve_at(
    xcap: usize,
    ycap: usize,
    kind: CornerKind,
    m: Marking,
    hmax: Option<usize>,
) -> Result<(JetSeries, Vec<JetSeries>)> {
    Ok(match kind {
        CornerKind::A => {
            let s = type_a::solve_system_a(xcap, ycap, m, hmax)?;
            (s.h, s.h_a)
        }
        CornerKind::B => {
            let s = type_b::solve_system_b(xcap, ycap, m, hmax)?;
            (s.j, s.j_a)
        }
    })
}

fn closed(c: &Ctx, kind: CornerKind, m: Marking, hmax: Option<usize>) -> Result<JetSeries> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    match kind {
        CornerKind::A => type_a::closed_h(x, y, m, hmax),
        CornerKind::B => type_b::closed_j(x, y, m, hmax),
    }
}

fn solver_vs_census(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    for m in c.markings() {
        let (h, _) = solve(c, kind, m, None)?;
        let expected = census_jets(&c.bars, c.cfg.xcap, c.cfg.ycap, m, kind);
        cmp.jets_full(&m.label(), &expected, &h);
    }
    Ok(Outcome::new(cmp, format!("{}, {}", c.caps(), c.markings_label())))
}

fn closed_vs_solver(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    for m in c.markings() {
        let (h, _) = solve(c, kind, m, None)?;
        cmp.jets_full(&m.label(), &h, &closed(c, kind, m, None)?);
    }
    Ok(Outcome::new(cmp, format!("{}, {}", c.caps(), c.markings_label())))
}

fn compare_families(cmp: &mut Cmp, label: &str, expected: &[JetSeries], got: &[JetSeries]) {
    for (a, (e, g)) in expected.iter().zip(got).enumerate().skip(1) {
        cmp.jets_full(&format!("{label} a={a}"), e, g);
    }
    if expected.len() != got.len() {
        cmp.check(|| format!("{label} family length"), &q(expected.len() as u64), &q(got.len() as u64));
    }
}

fn per_column_a(c: &Ctx) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    for m in c.markings() {
        let (_, h_a) = solve(c, CornerKind::A, m, None)?;
        let lem = type_a::closed_h_a(c.cfg.xcap, c.cfg.ycap, m, None)?;
        compare_families(&mut cmp, &m.label(), &h_a, &lem);
    }
    Ok(Outcome::new(cmp, format!("{}, {}", c.caps(), c.markings_label())))
}

fn per_column_b(c: &Ctx) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    for m in c.markings() {
        let (_, j_a) = solve(c, CornerKind::B, m, None)?;
        let lem = type_b::closed_j_a_theta(c.cfg.xcap, c.cfg.ycap, m, None)?;
        compare_families(&mut cmp, &m.label(), &j_a, &lem);
    }
    Ok(Outcome::new(cmp, format!("{}, {}", c.caps(), c.markings_label())))
}

/// Closed form and per-column closed form against the solver with heights at most `N`.
fn restricted_closed(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    for n in 1..=HMAX_CHECKED {
        for m in c.markings() {
            let label = format!("N={n} {}", m.label());
            let (h, h_a) = solve(c, kind, m, Some(n))?;
            cmp.jets_full(&label, &h, &closed(c, kind, m, Some(n))?);
            let lem = match kind {
                CornerKind::A => type_a::closed_h_a(x, y, m, Some(n))?,
                CornerKind::B => type_b::closed_j_a(x, y, m, Some(n))?,
            };
            compare_families(&mut cmp, &label, &h_a, &lem);
        }
    }
    Ok(Outcome::new(
        cmp,
        format!("{}, N<={HMAX_CHECKED}, {}", c.caps(), c.markings_label()),
    ))
}

fn restricted_vs_census(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    for n in 1..=HMAX_CHECKED {
        for m in c.markings() {
            let (h, _) = solve(c, kind, m, Some(n))?;
            let expected = census_jets(&c.bars_h[n], c.cfg.xcap, c.cfg.ycap, m, kind);
            cmp.jets_full(&format!("N={n} {}", m.label()), &expected, &h);
        }
    }
    Ok(Outcome::new(
        cmp,
        format!("{}, N<={HMAX_CHECKED}, {}", c.caps(), c.markings_label()),
    ))
}

fn unmarked_collapse(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    let reference = all_bargraphs(c.cfg.xcap, c.cfg.ycap)?;
    let (h, _) = solve(c, kind, Marking::Unmarked, None)?;
    cmp.jets_full("solver", &reference, &h);
    cmp.jets_full("closed", &reference, &closed(c, kind, Marking::Unmarked, None)?);
    let mut diags = Vec::new();
    // the height-one specialisation, with and without marks
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    match kind {
        CornerKind::A => {
            let (h1, _) = solve(c, kind, Marking::All, Some(1))?;
            let one_plus = &JetSeries::one(x, y) + &type_a::printed_h1(x, y)?;
            cmp.jets_full("N=1 all vs 1 + xy/(1-xy)", &one_plus, &h1);
        }
        CornerKind::B => {
            for m in [Marking::Unmarked, Marking::All] {
                let (j1, _) = solve(c, kind, m, Some(1))?;
                let reference = type_b::printed_j1(x, y, m)?;
                cmp.jets_full(&format!("N=1 {} vs 1 + sum x^m y^m p_m1", m.label()), &reference, &j1);
            }
        }
    }
    diags.push("reference (1-x)/(1-x-xy) at every mark 1".to_string());
    Ok(Outcome::new(cmp, c.caps()).with_diags(diags))
}

fn h2_constructive(c: &Ctx) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let mut cmp = Cmp::default();
    let d: JetSeries = poly(x, y, &[(0, 0, 1), (1, 1, -1), (2, 1, -1)]);
    let (h, _) = solve(c, CornerKind::A, Marking::Unmarked, Some(2))?;
    cmp.jets_full("N=2 unmarked vs 1/(1-xy-x^2y)", &d.inverse()?, &h);
    let (h_all, _) = solve(c, CornerKind::A, Marking::All, Some(2))?;
    cmp.jets_full("N=2 all vs census", &census_jets(&c.bars_h[2], x, y, Marking::All, CornerKind::A), &h_all);
    Ok(Outcome::new(cmp, c.caps()))
}

fn pk_routes(
    kind: CornerKind,
    k: usize,
    ncols: usize,
    m: Marking,
) -> Result<(JetSeries, JetSeries)> {
    Ok(match kind {
        CornerKind::A => (type_a::pk_series_a(k, ncols, m)?, type_a::pk_closed_a(k, ncols, m)?),
        CornerKind::B => (type_b::pk_series_b(k, ncols, m)?, type_b::pk_closed_b(k, ncols, m)?),
    })
}

fn stirling(c: &Ctx, n: usize, k: usize) -> Rational {
    from_big(BigInt::from(c.table.stirling(n, k as i64)))
}

fn pk_product(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    let ncols = c.cfg.setpart_n_max;
    for k in 1..=c.kmax() {
        for m in [Marking::Unmarked, Marking::All] {
            let (series, closed) = pk_routes(kind, k, ncols, m)?;
            for n in 0..=ncols {
                let got = series.coeff(0, n);
                let label = format!("k={k} {} t^{n}", m.label());
                cmp.check(|| format!("{label} Stirling"), &stirling(c, n, k), &got.value);
                let expected = field(c.sp.get(n, k), &|r| marked_count(r, m, kind));
                cmp.check(|| format!("{label} census total"), &expected, &got.deriv);
            }
            cmp.jets_full(&format!("k={k} {} closed", m.label()), &series, &closed);
        }
    }
    let (x, y) = (c.cfg.xcap, c.spy());
    for k in 1..=K_BIVARIATE.min(c.kmax()) {
        let got = match kind {
            CornerKind::A => type_a::pk_bivariate_a(k, x, y, Marking::All)?,
            CornerKind::B => type_b::pk_bivariate_b(k, x, y, Marking::All)?,
        };
        let expected = JetSeries::from_fn(x, y, |cells, n| {
            let r = c.sp_cells.get(&(k, cells, n));
            Jet::new(field(r, &|r| r.count), field(r, &|r| r.total(kind)))
        });
        cmp.jets_full(&format!("k={k} by cells"), &expected, &got);
    }
    Ok(Outcome::new(
        cmp,
        format!(
            "k<={}, letters<={ncols}; by cells: k<={}, cells<={x}, letters<={y}",
            c.kmax(),
            K_BIVARIATE.min(c.kmax())
        ),
    ))
}

fn f_all(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let (h, _) = solve(c, kind, Marking::All, None)?;
    let got = match kind {
        CornerKind::A => type_a::printed_f_all(x, y)?,
        CornerKind::B => type_b::printed_f_all(x, y)?,
    };
    let mut cmp = Cmp::default();
    cmp.jets_full("", &h, &got);
    Ok(Outcome::new(cmp, format!("{}, every mark 1+eps (first order)", c.caps())))
}

fn f_single(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let mut cmp = Cmp::default();
    for (v, w) in c.singles() {
        let (h, _) = solve(c, kind, single(v, w), None)?;
        let got = match kind {
            CornerKind::A => type_a::printed_f_single(v, w, x, y)?,
            CornerKind::B => type_b::printed_f_single(v, w, x, y)?,
        };
        cmp.jets_full(&format!("(v,w)=({v},{w})"), &h, &got);
    }
    Ok(Outcome::new(
        cmp,
        format!("{}, v,w<={}, one mark 1+eps (first order)", c.caps(), c.cfg.vw_max),
    ))
}

fn grid_check(c: &Ctx, got: &RatSeries, f: &dyn Fn(&CensusRecord) -> u64, label: &str) -> Outcome {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let expected = census_grid(&c.bars, x, y, f);
    let mut cmp = Cmp::default();
    cmp.series(label, Vars::XY, &expected, got, x, y);
    let diags = slice_sum_note(&expected, got, x, y).into_iter().collect();
    Outcome::new(cmp, c.caps()).with_diags(diags)
}

fn by_n_check(c: &Ctx, got: &RatSeries, f: &dyn Fn(&CensusRecord) -> u64) -> Outcome {
    let x = c.cfg.xcap;
    let expected = census_by_n(&c.bars, x, f);
    let mut cmp = Cmp::default();
    cmp.series("", Vars::X, &expected, got, x, 0);
    Outcome::new(cmp, format!("cells<={x}"))
}

fn g_n(c: &Ctx) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    for n in 1..=c.cfg.xcap {
        let expected = q(c.bars.by_n(n).total_a);
        cmp.check(|| format!("n={n}"), &expected, &type_a::closed_g_n(n));
    }
    Ok(Outcome::new(cmp, format!("1<=n<={}", c.cfg.xcap)))
}

fn t_xy(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let mut cmp = Cmp::default();
    let mut diags = Vec::new();
    for (v, w) in c.singles() {
        let got = match kind {
            CornerKind::A => type_a::printed_t(v, w, x, y)?,
            CornerKind::B => type_b::printed_t(v, w, x, y)?,
        };
        let (vv, ww) = (v as u32, w as u32);
        let expected = census_grid(&c.bars, x, y, &|r| r.per_ab(kind, vv, ww));
        cmp.series(&format!("(v,w)=({v},{w})"), Vars::XY, &expected, &got, x, y);
        if let Some(note) = slice_sum_note(&expected, &got, x, y) {
            diags.push(format!("(v,w)=({v},{w}): {note}"));
        }
    }
    Ok(Outcome::new(cmp, format!("{}, v,w<={}", c.caps(), c.cfg.vw_max)).with_diags(diags))
}

fn t_x1(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let x = c.cfg.xcap;
    let mut cmp = Cmp::default();
    for (v, w) in c.singles() {
        let got = match kind {
            CornerKind::A => type_a::printed_t_x1(v, w, x)?,
            CornerKind::B => type_b::printed_t_x1(v, w, x)?,
        };
        let (vv, ww) = (v as u32, w as u32);
        let expected = census_by_n(&c.bars, x, &|r| r.per_ab(kind, vv, ww));
        cmp.series(&format!("(v,w)=({v},{w})"), Vars::X, &expected, &got, x, 0);
    }
    Ok(Outcome::new(cmp, format!("cells<={x}, v,w<={}", c.cfg.vw_max)))
}

/// Exact comparison of the closed t_n, then the asymptotic classification:
/// for every pair, the ratio exact/formula over the top window must be
/// monotone and within 1/4 of 1.
fn t_n(c: &Ctx) -> Result<Outcome> {
    let n_hi = c.cfg.xcap;
    let lo = n_hi.saturating_sub(ASYMPTOTIC_WINDOW).max(1);
    let band = rat(1, 4);
    let mut cmp = Cmp::default();
    let mut diags = Vec::new();
    let mut asymptotic = true;
    for (v, w) in c.singles() {
        let exact = |n: usize| q(c.bars.by_n(n).per_ab(CornerKind::A, v as u32, w as u32));
        for n in 1..=n_hi {
            cmp.check(|| format!("(v,w)=({v},{w}) n={n}"), &exact(n), &type_a::closed_t_n(v, w, n));
        }
        let ratios: Vec<Rational> = (lo..=n_hi).map(|n| exact(n) / type_a::closed_t_n(v, w, n)).collect();
        let monotone = ratios.windows(2).all(|p| p[0] <= p[1]) || ratios.windows(2).all(|p| p[0] >= p[1]);
        let near_one = ratios.iter().all(|r| abs(&(r - int(1))) <= band);
        asymptotic &= monotone && near_one;
        diags.push(format!(
            "(v,w)=({v},{w}): exact/formula for n={lo}..{n_hi}: [{}]; monotone={monotone}; within 1/4 of 1={near_one}",
            ratios.iter().map(to_pq).collect::<Vec<_>>().join(", ")
        ));
    }
    if c.cfg.vw_max >= 1 && n_hi >= 3 {
        let e = q(c.bars.by_n(3).per_ab(CornerKind::A, 1, 1));
        diags.insert(
            0,
            format!(
                "witness (v,w)=(1,1) n=3: exact {}, formula {}",
                to_pq(&e),
                to_pq(&type_a::closed_t_n(1, 1, 3))
            ),
        );
    }
    let mut o = Outcome::new(cmp, format!("1<=n<={n_hi}, v,w<={}", c.cfg.vw_max)).with_diags(diags);
    o.status = Some(if asymptotic { Status::AsymptoticOnly } else { Status::Mismatch });
    Ok(o)
}

fn h1(c: &Ctx) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let (h, _) = solve(c, CornerKind::A, Marking::All, Some(1))?;
    let got = type_a::printed_h1(x, y)?;
    let mut cmp = Cmp::default();
    cmp.jets_full("", &h, &got);
    let mut shifted = Cmp::default();
    shifted.jets_full("", &h, &(&JetSeries::one(x, y) + &got));
    let diags = vec![format!(
        "adding the empty bargraph (constant 1) to the displayed form: {}",
        if shifted.ok() { "agrees" } else { "still differs" }
    )];
    Ok(Outcome::new(cmp, c.caps()).with_diags(diags))
}

fn h2(c: &Ctx) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let (h, _) = solve(c, CornerKind::A, Marking::All, Some(2))?;
    let mut cmp = Cmp::default();
    cmp.jets_full("all", &h, &type_a::printed_h2(x, y, Marking::All)?);
    let (hu, _) = solve(c, CornerKind::A, Marking::Unmarked, Some(2))?;
    cmp.jets_full("unmarked", &hu, &type_a::printed_h2(x, y, Marking::Unmarked)?);
    Ok(Outcome::new(cmp, c.caps()))
}

fn qk_xy(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.spy());
    let mut cmp = Cmp::default();
    let kb = K_BIVARIATE.min(c.kmax());
    for k in 1..=kb {
        let got = match kind {
            CornerKind::A => type_a::printed_qk_xy_a(k, x, y)?,
            CornerKind::B => type_b::printed_qk_xy_b(k, x, y)?,
        };
        let expected = RatSeries::from_fn(x, y, |cells, n| field(c.sp_cells.get(&(k, cells, n)), &|r| r.total(kind)));
        cmp.series(&format!("k={k}"), Vars::XY, &expected, &got, x, y);
    }
    Ok(Outcome::new(cmp, format!("k<={kb}, cells<={x}, letters<={y}")))
}

fn phi_prime(c: &Ctx) -> Result<Outcome> {
    let tcap = c.cfg.setpart_n_max;
    let mut cmp = Cmp::default();
    for k in 1..=c.kmax() {
        let expected = phi(k, tcap)?.derivative_x();
        let got = type_a::printed_phi_prime(k, tcap)?;
        cmp.series(&format!("k={k}"), Vars::T, &expected, &got, tcap - 1, 0);
    }
    Ok(Outcome::new(cmp, format!("k<={}, n<={}", c.kmax(), tcap - 1)))
}

fn sp_total(c: &Ctx, kind: CornerKind, n: usize, k: usize) -> Rational {
    field(c.sp.get(n, k), &|r| r.total(kind))
}

fn qk_line(c: &Ctx, kind: CornerKind, line: usize) -> Result<Outcome> {
    let tcap = c.cfg.setpart_n_max;
    let mut cmp = Cmp::default();
    for k in 1..=c.kmax() {
        let lines = match kind {
            CornerKind::A => type_a::qk_lines_a(k, tcap)?,
            CornerKind::B => type_b::qk_lines_b(k, tcap)?,
        };
        let expected = RatSeries::from_fn(tcap, 0, |n, _| sp_total(c, kind, n, k));
        cmp.series(&format!("k={k}"), Vars::T, &expected, &lines[line], tcap, 0);
    }
    Ok(Outcome::new(cmp, format!("k<={}, n<={tcap}", c.kmax())))
}

fn egf_qk(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let tcap = c.cfg.setpart_n_max;
    let mut cmp = Cmp::default();
    for k in 1..=c.kmax() {
        let got = match kind {
            CornerKind::A => type_a::printed_egf_qk_a(k, tcap)?,
            CornerKind::B => type_b::printed_egf_qk_b(k, tcap)?,
        };
        let expected = RatSeries::from_fn(tcap, 0, |n, _| sp_total(c, kind, n, k) * inv_factorial(n));
        cmp.series(&format!("k={k}"), Vars::T, &expected, &got, tcap, 0);
    }
    Ok(Outcome::new(cmp, format!("k<={}, n<={tcap}", c.kmax())))
}

fn egf_q(c: &Ctx, kind: CornerKind) -> Result<Outcome> {
    let tcap = c.cfg.setpart_n_max;
    let got = match kind {
        CornerKind::A => type_a::printed_egf_q_a(tcap, tcap)?,
        CornerKind::B => type_b::printed_egf_q_b(tcap, tcap)?,
    };
    let expected = RatSeries::from_fn(tcap, tcap, |n, k| sp_total(c, kind, n, k) * inv_factorial(n));
    let mut cmp = Cmp::default();
    cmp.series("", Vars::TY, &expected, &got, tcap, tcap);
    Ok(Outcome::new(cmp, format!("n<={tcap}, all k")))
}

fn dq_dt(c: &Ctx, kind: CornerKind, line: usize) -> Result<Outcome> {
    // the t^n coefficient needs totals over partitions of [n+1]
    let tcap = c.cfg.setpart_n_max - 1;
    let ycap = tcap + 1;
    let lines = match kind {
        CornerKind::A => type_a::printed_dq_dt_a(tcap, ycap)?,
        CornerKind::B => type_b::printed_dq_dt_b(tcap, ycap)?,
    };
    let expected = RatSeries::from_fn(tcap, ycap, |n, k| sp_total(c, kind, n + 1, k) * inv_factorial(n));
    let mut cmp = Cmp::default();
    cmp.series("", Vars::TY, &expected, &lines[line], tcap, ycap);
    Ok(Outcome::new(cmp, format!("n<={tcap}, all k")))
}

fn setpart_total(c: &Ctx, kind: CornerKind, as_printed: bool) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    let n_hi = c.cfg.setpart_n_max - 1;
    for n in 0..=n_hi {
        for k in 0..=n + 3 {
            let t = match kind {
                CornerKind::A => type_a::setpart_total_a(&c.table, n, k),
                CornerKind::B => type_b::setpart_total_b(&c.table, n, k),
            };
            let got = if as_printed { t.printed } else { t.derived };
            cmp.check(|| format!("(n,k)=({n},{k})"), &sp_total(c, kind, n + 1, k), &got);
        }
    }
    Ok(Outcome::new(cmp, format!("0<=n<={n_hi}, 0<=k<=n+3; partitions of [n+1]")))
}

fn setpart_bell(c: &Ctx, kind: CornerKind, as_printed: bool) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    let n_hi = c.cfg.setpart_n_max - 1;
    for n in 0..=n_hi {
        let t = match kind {
            CornerKind::A => type_a::setpart_bell_a(&c.table, n),
            CornerKind::B => type_b::setpart_bell_b(&c.table, n),
        };
        let got = if as_printed { t.printed } else { t.derived };
        cmp.check(|| format!("n={n}"), &q(c.sp.by_n(n + 1).total(kind)), &got);
    }
    Ok(Outcome::new(cmp, format!("0<=n<={n_hi}; partitions of [n+1]")))
}

/// Corner counts by `(a, b)` on the example bargraph against the listed ones.
fn example_corners(kind: CornerKind) -> Result<Outcome> {
    let g: Bargraph = EXAMPLE_WORD.parse()?;
    let listed: &[(u32, u32)] = match kind {
        CornerKind::A => &EXAMPLE_A,
        CornerKind::B => &EXAMPLE_B,
    };
    let mut counts: BTreeMap<(u32, u32), (u64, u64)> = BTreeMap::new();
    for cr in g.corners().into_iter().filter(|cr| cr.kind == kind) {
        counts.entry((cr.a, cr.b)).or_default().0 += 1;
    }
    for ab in listed {
        counts.entry(*ab).or_default().1 += 1;
    }
    let mut cmp = Cmp::default();
    for ((a, b), (e, l)) in &counts {
        cmp.check(|| format!("(a,b)=({a},{b})"), &q(*e), &q(*l));
    }
    let diags = vec![format!(
        "corners of {EXAMPLE_WORD}: {}",
        g.corners()
            .iter()
            .filter(|cr| cr.kind == kind)
            .map(|cr| cr.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    )];
    Ok(Outcome::new(cmp, format!("bargraph {EXAMPLE_WORD}")).with_diags(diags))
}

fn j1(c: &Ctx) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let mut cmp = Cmp::default();
    for m in c.markings() {
        let (j, _) = solve(c, CornerKind::B, m, Some(1))?;
        cmp.jets_full(&m.label(), &j, &type_b::printed_j1(x, y, m)?);
    }
    Ok(Outcome::new(cmp, format!("{}, {}", c.caps(), c.markings_label())))
}

fn dj_dp(c: &Ctx) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let mut cmp = Cmp::default();
    for n in 1..=HMAX_CHECKED {
        let (j, _) = solve(c, CornerKind::B, Marking::All, Some(n))?;
        cmp.series(&format!("N={n}"), Vars::XY, &j.deriv_part(), &type_b::printed_dj_dp(n, x, y)?, x, y);
    }
    Ok(Outcome::new(cmp, format!("{}, N<={HMAX_CHECKED}", c.caps())))
}

fn j_n_unmarked(c: &Ctx) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let mut cmp = Cmp::default();
    for n in 1..=HMAX_CHECKED {
        let (_, j_a) = solve(c, CornerKind::B, Marking::Unmarked, Some(n))?;
        let got = type_b::printed_j_n_unmarked(n, x, y)?;
        cmp.series(&format!("N={n}"), Vars::XY, &j_a[n].value_part(), &got, x, y);
    }
    Ok(Outcome::new(cmp, format!("{}, N<={HMAX_CHECKED}", c.caps())))
}

fn dj_n_dp(c: &Ctx) -> Result<Outcome> {
    let (x, y) = (c.cfg.xcap, c.cfg.ycap);
    let mut cmp = Cmp::default();
    for n in 1..=HMAX_CHECKED {
        let (_, j_a) = solve(c, CornerKind::B, Marking::All, Some(n))?;
        let got = type_b::printed_dj_n_dp(n, x, y)?;
        cmp.series(&format!("N={n}"), Vars::XY, &j_a[n].deriv_part(), &got, x, y);
    }
    Ok(Outcome::new(cmp, format!("{}, N<={HMAX_CHECKED}", c.caps())))
}

fn dj_n_dp_1t(c: &Ctx) -> Result<Outcome> {
    let tcap = c.cfg.setpart_n_max;
    let mut cmp = Cmp::default();
    for n in 1..=HMAX_CHECKED {
        // heights at most N: t^m collects at most N·m cells
        let (_, j_a) = solve_at(n * tcap, tcap, CornerKind::B, Marking::All, Some(n))?;
        let expected = j_a[n].substitute_x_one().deriv_part().y_to_x();
        let got = type_b::printed_dj_n_dp_1t(n, tcap);
        cmp.series(&format!("N={n}"), Vars::T, &expected, &got, tcap, 0);
    }
    Ok(Outcome::new(cmp, format!("columns<={tcap}, N<={HMAX_CHECKED}")))
}

fn count_invariant(c: &Ctx) -> Result<Outcome> {
    let mut cmp = Cmp::default();
    for (label, t) in [("bargraphs", &c.bars), ("set partitions", &c.sp)] {
        for ((n, k), r) in t.rows.iter().filter(|((n, _), _)| *n > 0) {
            let diff = q(r.total_b) - q(r.total_a);
            cmp.check(|| format!("{label} (n,k)=({n},{k})"), &q(r.count), &diff);
        }
    }
    Ok(Outcome::new(
        cmp,
        format!("{}; set partitions of [n], n<={}", c.caps(), c.cfg.setpart_n_max),
    )
    .with_diags(vec!["total_B - total_A against the object count; the empty object is excluded".to_string()]))
}
