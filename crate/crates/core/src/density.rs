//! Empirical densities over Riemann-Roch boxes along a divisor chain.
//!
//! A chain point `D` contributes the ratio `|A ∩ L(D)^d| / |L(D)^d|`
//! (exhaustive mode) or a Monte Carlo estimate of it (sample mode). Work at
//! each chain point is indexed by `0..work_size(j)` and can be split into
//! disjoint ranges; [`DensityExperiment::count_hits`] over a partition sums
//! to the same total regardless of how it is cut.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::eisenstein::{local_measure_u_for_degree, ramified_tail_bound, LocalEisenstein};
use crate::error::invalid;
use crate::gf::Gf;
use crate::holomorphy::{stream_rng, DivisorOnT, HolomorphySpec, RiemannRochBox};
use crate::places::{Place, RationalFunction, RationalFunctionField};
use crate::polyring::{Poly, PolyRing};
use crate::rational::{to_f64, PowerProduct};
use crate::unimodular::is_unimodular_entries;
use crate::{Error, Result};

/// Sample indices occupy the low bits of the RNG stream; the chain index the high bits.
const SAMPLE_BITS: u32 = 40;

/// A polynomial in the tuple coordinates `y_0, ..., y_{d-1}` with
/// coefficients in `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleForm {
    terms: Vec<(Gf, Vec<u32>)>,
}

impl TupleForm {
    /// Terms `c * prod y_i^{e_i}`; zero coefficients and trailing zero
    /// exponents are dropped.
    pub fn new(terms: Vec<(Gf, Vec<u32>)>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, mut e)| {
                while e.last() == Some(&0) {
                    e.pop();
                }
                (c, e)
            })
            .collect();
        TupleForm { terms }
    }

    /// The form `y_i`.
    pub fn coordinate(i: usize) -> Self {
        let mut e = alloc::vec![0; i + 1];
        e[i] = 1;
        TupleForm {
            terms: alloc::vec![(Gf::ONE, e)],
        }
    }

    pub fn terms(&self) -> &[(Gf, Vec<u32>)] {
        &self.terms
    }

    /// Number of coordinates the form mentions (highest index + 1).
    pub fn variables(&self) -> usize {
        self.terms
            .iter()
            .map(|(_, e)| e.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, ff: &RationalFunctionField, y: &[RationalFunction]) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (c, exps) in &self.terms {
            let mut term = ff.constant(*c);
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = ff.mul(&term, &ff.pow(&y[i], e as i64).expect("nonnegative power"));
                }
            }
            acc = ff.add(&acc, &term);
        }
        acc
    }
}

/// The event whose density is measured.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    /// `(a_0, ..., a_n)` lies in `U_P` for some `P in S` with `deg P <= t_scan`.
    RamifiedSomePlace { n: usize, t_scan: usize },
    /// The `k x m` matrix (row-major) is unimodular.
    Unimodular { k: usize, m: usize },
    /// `f(y) = g(y) = 0 mod P` for some `P in S` with `t < deg P <= t_max`;
    /// `t_max = None` means `deg D` at each chain point.
    CustomCongruence {
        f: TupleForm,
        g: TupleForm,
        t: usize,
        t_max: Option<usize>,
    },
}

impl Predicate {
    pub fn label(&self) -> String {
        match self {
            Predicate::RamifiedSomePlace { n, t_scan } => format!("in_U_P_some_place(n={n}, t_scan={t_scan})"),
            Predicate::Unimodular { k, m } => format!("unimodular(k={k}, m={m})"),
            Predicate::CustomCongruence { t, t_max, .. } => match t_max {
                Some(tm) => format!("custom_congruence(t={t}, t_max={tm})"),
                None => format!("custom_congruence(t={t}, t_max=deg D)"),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every tuple of `L(D)^d`; fails above `cap` tuples.
    Exhaustive { cap: u64 },
    /// `count` tuples drawn uniformly, keyed by `(seed, chain index, sample index)`.
    Sample { seed: u64, count: u64 },
}

#[derive(Clone, Debug)]
pub struct DensityExperiment {
    predicate: Predicate,
    spec: HolomorphySpec,
    arity: usize,
    chain: Vec<DivisorOnT>,
    mode: Mode,
    reference: Option<BigRational>,
    schedule: String,
}

/// One chain point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointReport {
    pub divisor: DivisorOnT,
    pub degree: u64,
    pub ell: usize,
    pub hits: u64,
    pub total: u64,
    pub ratio: BigRational,
    /// Binomial standard error, sample mode only.
    pub std_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub predicate: String,
    pub schedule: String,
    pub mode: Mode,
    pub points: Vec<PointReport>,
    pub reference: Option<BigRational>,
    /// Upper bound on the mass of places beyond the predicate's scan.
    pub truncation_bias: Option<f64>,
    pub notes: Vec<String>,
}

/// Per-point gaps `|ratio - reference|`.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub gaps: Vec<BigRational>,
    /// Gaps over the last three points never increase.
    pub eventually_monotone: bool,
}

/// Precomputed per-experiment state shared by all workers.
#[derive(Clone, Debug)]
pub struct Evaluator {
    locals: Vec<LocalEisenstein>,
}

impl DensityExperiment {
    pub fn new(
        predicate: Predicate,
        spec: HolomorphySpec,
        arity: usize,
        chain: Vec<DivisorOnT>,
        mode: Mode,
        reference: Option<BigRational>,
    ) -> Result<Self> {
        match &predicate {
            Predicate::RamifiedSomePlace { n, t_scan } => {
                if *n < 2 {
                    return Err(invalid!("the ramified predicate needs n >= 2"));
                }
                if *t_scan < 1 {
                    return Err(invalid!("t_scan must be at least 1"));
                }
                if arity != n + 1 {
                    return Err(invalid!("arity {arity} does not match n + 1 = {}", n + 1));
                }
            }
            Predicate::Unimodular { k, m } => {
                if *k < 1 || k >= m {
                    return Err(invalid!("unimodular predicate needs 1 <= k < m"));
                }
                if arity != k * m {
                    return Err(invalid!("arity {arity} does not match k * m = {}", k * m));
                }
            }
            Predicate::CustomCongruence { f, g, t, t_max } => {
                if arity < 1 || f.variables() > arity || g.variables() > arity {
                    return Err(invalid!("forms mention more coordinates than the arity {arity}"));
                }
                if t_max.is_some_and(|tm| tm < *t) {
                    return Err(invalid!("t_max must be at least t"));
                }
            }
        }
        for (a, b) in chain.iter().zip(chain.iter().skip(1)) {
            if !a.le(b) || a.degree() >= b.degree() {
                return Err(invalid!("chain must be strictly increasing"));
            }
        }
        for d in &chain {
            spec.riemann_roch_box(d)?;
        }
        if let Mode::Sample { count, .. } = mode {
            if count == 0 || count >= 1 << SAMPLE_BITS {
                return Err(invalid!("sample count must be in 1..2^{SAMPLE_BITS}"));
            }
        }
        if chain.len() as u64 >= 1 << (64 - SAMPLE_BITS) {
            return Err(invalid!("chain too long"));
        }
        let schedule = if chain == spec.default_chain(chain.len() as u64 - 1) {
            format!(
                "default chain D_j = j * sum_(R in T) R, j = 0..{}",
                chain.len().saturating_sub(1)
            )
        } else {
            String::from("custom chain")
        };
        Ok(DensityExperiment {
            predicate,
            spec,
            arity,
            chain,
            mode,
            reference,
            schedule,
        })
    }

    pub fn predicate(&self) -> &Predicate {
        &self.predicate
    }

    pub fn spec(&self) -> &HolomorphySpec {
        &self.spec
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn chain(&self) -> &[DivisorOnT] {
        &self.chain
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn reference(&self) -> Option<&BigRational> {
        self.reference.as_ref()
    }

    pub fn evaluator(&self) -> Result<Evaluator> {
        let mut locals = Vec::new();
        if let Predicate::RamifiedSomePlace { t_scan, .. } = self.predicate {
            for place in self.spec.places_up_to(t_scan)? {
                locals.push(LocalEisenstein::new(self.spec.function_field(), &place)?);
            }
        }
        Ok(Evaluator { locals })
    }

    fn point_box(&self, j: usize) -> Result<RiemannRochBox> {
        self.spec.riemann_roch_box(&self.chain[j])
    }

    /// Number of work items at chain point `j`: tuples or samples.
    pub fn work_size(&self, j: usize) -> Result<u64> {
        let b = self.point_box(j)?;
        match self.mode {
            Mode::Sample { count, .. } => Ok(count),
            Mode::Exhaustive { cap } => {
                let q = self.spec.q() as u64;
                let exp = (b.dim() * self.arity) as u32;
                q.checked_pow(exp).filter(|&n| n <= cap).ok_or_else(|| Error::TooLarge {
                    what: format!("L(D)^{} at deg D = {}", self.arity, self.chain[j].degree()),
                    size: format!("{q}^{exp}"),
                    cap,
                })
            }
        }
    }

    /// Hits among work items `range` at chain point `j`.
    pub fn count_hits(&self, ev: &Evaluator, j: usize, range: Range<u64>) -> Result<u64> {
        let b = self.point_box(j)?;
        let hit = HitTest::new(self, ev, j)?;
        let d = self.arity;
        let mut tuple = Vec::with_capacity(d);
        let mut hits = 0u64;
        match self.mode {
            Mode::Exhaustive { .. } => {
                let len = b.len().expect("checked by work_size");
                let cache: Option<Vec<RationalFunction>> =
                    (len <= 1 << 16).then(|| (0..len).map(|i| b.element(i)).collect());
                for idx in range {
                    tuple.clear();
                    let mut rest = idx;
                    for _ in 0..d {
                        let i = rest % len;
                        rest /= len;
                        tuple.push(match &cache {
                            Some(c) => c[i as usize].clone(),
                            None => b.element(i),
                        });
                    }
                    hits += u64::from(hit.test(&tuple));
                }
            }
            Mode::Sample { seed, .. } => {
                for idx in range {
                    let mut rng = stream_rng(seed, ((j as u64) << SAMPLE_BITS) | idx);
                    tuple.clear();
                    for _ in 0..d {
                        let coords = b.sample_coords(&mut rng);
                        tuple.push(b.element_from_coords(&coords));
                    }
                    hits += u64::from(hit.test(&tuple));
                }
            }
        }
        Ok(hits)
    }

    /// Builds the report from per-point hit counts.
    pub fn assemble(&self, hits: &[u64]) -> Result<DensityReport> {
        if hits.len() != self.chain.len() {
            return Err(invalid!("expected {} hit counts, got {}", self.chain.len(), hits.len()));
        }
        let mut points = Vec::with_capacity(hits.len());
        for (j, &h) in hits.iter().enumerate() {
            let total = self.work_size(j)?;
            let ratio = BigRational::new(h.into(), total.into());
            let std_error = match self.mode {
                Mode::Sample { .. } => {
                    let p = h as f64 / total as f64;
                    Some(libm::sqrt(p * (1.0 - p) / total as f64))
                }
                Mode::Exhaustive { .. } => None,
            };
            points.push(PointReport {
                divisor: self.chain[j].clone(),
                degree: self.chain[j].degree(),
                ell: self.chain[j].degree() as usize + 1,
                hits: h,
                total,
                ratio,
                std_error,
            });
        }
        let mut notes = Vec::new();
        let mut truncation_bias = None;
        if let Predicate::RamifiedSomePlace { n, t_scan } = self.predicate {
            let bias = ramified_tail_bound(n, &self.spec, t_scan)?;
            notes.push(format!(
                "places of degree > {t_scan} are not scanned; their total measure is at most {bias:.3e}"
            ));
            truncation_bias = Some(bias);
        }
        notes.push(String::from(
            "chain limit only; the directed-set limsup is not computed",
        ));
        Ok(DensityReport {
            predicate: self.predicate.label(),
            schedule: self.schedule.clone(),
            mode: self.mode,
            points,
            reference: self.reference.clone(),
            truncation_bias,
            notes,
        })
    }
}

struct HitTest<'a> {
    exp: &'a DensityExperiment,
    ev: &'a Evaluator,
    /// Congruence predicate: degree window and whether the zero pair hits.
    window: (usize, usize),
    zero_hits: bool,
}

impl<'a> HitTest<'a> {
    fn new(exp: &'a DensityExperiment, ev: &'a Evaluator, j: usize) -> Result<Self> {
        let mut window = (0, 0);
        let mut zero_hits = false;
        if let Predicate::CustomCongruence { t, t_max, .. } = &exp.predicate {
            let hi = t_max.unwrap_or(exp.chain[j].degree() as usize);
            window = (*t, hi);
            for d in t + 1..=hi {
                if exp.spec.count_places_of_degree(d)? > 0 {
                    zero_hits = true;
                    break;
                }
            }
        }
        Ok(HitTest {
            exp,
            ev,
            window,
            zero_hits,
        })
    }

    fn test(&self, y: &[RationalFunction]) -> bool {
        match &self.exp.predicate {
            Predicate::RamifiedSomePlace { .. } => self
                .ev
                .locals
                .iter()
                .any(|l| l.reduce(y).is_some_and(|c| l.classify(&c).is_some())),
            Predicate::Unimodular { k, m } => is_unimodular_entries(&self.exp.spec, y, *k, *m),
            Predicate::CustomCongruence { f, g, .. } => {
                let ff = self.exp.spec.function_field();
                let (fy, gy) = (f.eval(ff, y), g.eval(ff, y));
                common_zero_in_window(&self.exp.spec, &fy, &gy, self.window, self.zero_hits)
            }
        }
    }
}

fn common_zero_in_window(
    spec: &HolomorphySpec,
    fy: &RationalFunction,
    gy: &RationalFunction,
    (lo, hi): (usize, usize),
    zero_hits: bool,
) -> bool {
    if fy.is_zero() && gy.is_zero() {
        return zero_hits;
    }
    let ff = spec.function_field();
    if spec.infinity_in_s() && lo < 1 && hi >= 1 {
        let inf = Place::Infinity;
        if ff.valuation(fy, &inf).at_least(1) && ff.valuation(gy, &inf).at_least(1) {
            return true;
        }
    }
    let ring = ff.ring();
    let g = if fy.is_zero() {
        ring.monic(gy.num())
    } else if gy.is_zero() {
        ring.monic(fy.num())
    } else {
        ring.gcd(fy.num(), gy.num()).expect("nonzero gcd")
    };
    has_factor_degree_in(ring, &spec.strip_excluded(&g), lo + 1, hi)
}

/// `f` has an irreducible factor of degree in `lo..=hi` (distinct-degree
/// factorization, stopping at `hi`).
pub fn has_factor_degree_in(ring: &PolyRing, f: &Poly, lo: usize, hi: usize) -> bool {
    if f.is_zero() || lo > hi {
        return false;
    }
    let q = ring.q() as u64;
    let mut rest = ring.monic(f);
    let x = Poly::x();
    let mut h = x.clone();
    for d in 1..=hi {
        let deg = rest.degree().unwrap_or(0);
        if deg == 0 {
            return false;
        }
        if deg < 2 * d {
            // what remains is irreducible
            return (lo..=hi).contains(&deg);
        }
        h = ring.powmod(&h, q, &rest).expect("nonzero modulus");
        let g = ring.gcd(&rest, &ring.sub(&h, &x)).expect("nonzero gcd");
        if !g.is_one() {
            if d >= lo {
                return true;
            }
            let mut common = g;
            while !common.is_one() {
                rest = ring.div_exact(&rest, &common).expect("divisor");
                common = ring.gcd(&rest, &common).expect("nonzero gcd");
            }
            h = ring.rem(&h, &rest).expect("nonzero modulus");
        }
    }
    false
}

/// Serial evaluation of every chain point.
pub fn run(exp: &DensityExperiment) -> Result<DensityReport> {
    let ev = exp.evaluator()?;
    let mut hits = Vec::with_capacity(exp.chain.len());
    for j in 0..exp.chain.len() {
        let n = exp.work_size(j)?;
        hits.push(exp.count_hits(&ev, j, 0..n)?);
    }
    exp.assemble(&hits)
}

/// Gaps against the reference; errors when the report has none.
pub fn compare(report: &DensityReport) -> Result<Comparison> {
    let reference = report
        .reference
        .as_ref()
        .ok_or_else(|| invalid!("the report has no reference value"))?;
    let gaps: Vec<BigRational> = report
        .points
        .iter()
        .map(|p| num_traits::Signed::abs(&(&p.ratio - reference)))
        .collect();
    let tail = &gaps[gaps.len().saturating_sub(3)..];
    let eventually_monotone = tail.windows(2).all(|w| w[1] <= w[0]);
    Ok(Comparison {
        gaps,
        eventually_monotone,
    })
}

/// Fraction of `L(D)^d` on which `f` and `g` share a zero at some place of
/// `S` with `t < deg P <= t_max` (default `t_max = deg D`).
#[allow(clippy::too_many_arguments)]
pub fn tail_density(
    f: &TupleForm,
    g: &TupleForm,
    arity: usize,
    t: usize,
    t_max: Option<usize>,
    divisor: &DivisorOnT,
    spec: &HolomorphySpec,
    mode: Mode,
) -> Result<BigRational> {
    let predicate = Predicate::CustomCongruence {
        f: f.clone(),
        g: g.clone(),
        t,
        t_max,
    };
    let exp = DensityExperiment::new(predicate, spec.clone(), arity, alloc::vec![divisor.clone()], mode, None)?;
    Ok(run(&exp)?.points.remove(0).ratio)
}

/// `prod_{P in chosen} mu_P * prod_{P in S \ chosen, deg P <= t} (1 - mu_P)`,
/// where `mu` gives the local measure by degree.
pub fn configuration_measure(
    spec: &HolomorphySpec,
    chosen: &BTreeSet<Place>,
    t: usize,
    mu: impl Fn(usize) -> Result<BigRational>,
) -> Result<BigRational> {
    if let Some(p) = chosen.iter().find(|p| !spec.in_s(p)) {
        return Err(invalid!("{p:?} is an excluded place"));
    }
    let mut acc = PowerProduct::new();
    for p in chosen {
        acc.mul_pow(&mu(p.degree())?, 1)?;
    }
    for d in 1..=t {
        let inside = chosen.iter().filter(|p| p.degree() == d).count() as u128;
        let count = spec.count_places_of_degree(d)?.saturating_sub(inside);
        acc.mul_pow(&(BigRational::one() - mu(d)?), count)?;
    }
    Ok(acc.finish())
}

/// [`configuration_measure`] for the ramified local sets `U_P`.
pub fn ramified_configuration_measure(
    spec: &HolomorphySpec,
    chosen: &BTreeSet<Place>,
    n: usize,
    t: usize,
) -> Result<BigRational> {
    let q = spec.q() as u64;
    configuration_measure(spec, chosen, t, |d| local_measure_u_for_degree(q, d, n))
}

impl PointReport {
    pub fn ratio_f64(&self) -> f64 {
        to_f64(&self.ratio)
    }
}

impl Comparison {
    pub fn final_gap(&self) -> Option<&BigRational> {
        self.gaps.last()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }
}

impl DensityReport {
    pub fn last_ratio(&self) -> Option<&BigRational> {
        self.points.last().map(|p| &p.ratio)
    }

    pub fn all_ratios_in_unit_interval(&self) -> bool {
        self.points
            .iter()
            .all(|p| p.ratio >= BigRational::zero() && p.ratio <= BigRational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unimodular::unimodular_density_exact;
    use crate::zeta::LPolynomial;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn f2x() -> HolomorphySpec {
        HolomorphySpec::polynomial_ring(RationalFunctionField::with_order(2).unwrap())
    }

    fn unimodular_exp(j_max: u64, mode: Mode) -> DensityExperiment {
        let spec = f2x();
        let chain = spec.default_chain(j_max);
        let reference = unimodular_density_exact(&spec, 1, 2, &LPolynomial::one()).unwrap();
        DensityExperiment::new(
            Predicate::Unimodular { k: 1, m: 2 },
            spec,
            2,
            chain,
            mode,
            Some(reference),
        )
        .unwrap()
    }

    #[test]
    fn unimodular_small_boxes() {
        let report = run(&unimodular_exp(1, Mode::Exhaustive { cap: 1 << 20 })).unwrap();
        assert_eq!(report.points[0].ratio, r(3, 4));
        // pairs over {0, 1, x, x+1} with a constant gcd: all but (0,0), (x,x), (x+1,x+1), (x,0), (0,x), (x+1,0), (0,x+1)
        assert_eq!(report.points[1].hits, 9);
        assert!(report.schedule.starts_with("default chain"));
    }

    #[test]
    fn sample_mode_is_deterministic() {
        let a = run(&unimodular_exp(3, Mode::Sample { seed: 7, count: 500 })).unwrap();
        let b = run(&unimodular_exp(3, Mode::Sample { seed: 7, count: 500 })).unwrap();
        assert_eq!(a, b);
        assert!(a.points.iter().all(|p| p.std_error.is_some()));
    }

    #[test]
    fn partitions_sum_to_the_whole() {
        let exp = unimodular_exp(3, Mode::Sample { seed: 3, count: 300 });
        let ev = exp.evaluator().unwrap();
        let whole = exp.count_hits(&ev, 3, 0..300).unwrap();
        let parts: u64 = [0..17, 17..200, 200..300]
            .into_iter()
            .map(|r| exp.count_hits(&ev, 3, r).unwrap())
            .sum();
        assert_eq!(whole, parts);
    }

    #[test]
    fn validation() {
        let spec = f2x();
        let chain = spec.default_chain(2);
        let p = Predicate::Unimodular { k: 1, m: 2 };
        assert!(DensityExperiment::new(
            p.clone(),
            spec.clone(),
            3,
            chain.clone(),
            Mode::Exhaustive { cap: 10 },
            None
        )
        .is_err());
        let mut bad = chain.clone();
        bad.swap(0, 1);
        assert!(DensityExperiment::new(p.clone(), spec.clone(), 2, bad, Mode::Exhaustive { cap: 10 }, None).is_err());
        let exp = DensityExperiment::new(p, spec, 2, chain, Mode::Exhaustive { cap: 10 }, None).unwrap();
        assert!(matches!(run(&exp), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn compare_examples() {
        let report = run(&unimodular_exp(4, Mode::Exhaustive { cap: 1 << 20 })).unwrap();
        let c = compare(&report).unwrap();
        assert_eq!(c.gaps.len(), 5);
        assert_eq!(c.gaps[0], r(1, 4));
        let mut empty = report.clone();
        empty.points.clear();
        assert!(compare(&empty).unwrap().is_empty());
        empty.reference = None;
        assert!(compare(&empty).is_err());
    }

    #[test]
    fn tail_examples() {
        let spec = f2x();
        let d3 = spec.chain_point(3);
        let (y0, y1) = (TupleForm::coordinate(0), TupleForm::coordinate(1));
        let mode = Mode::Exhaustive { cap: 1 << 16 };
        assert_eq!(
            tail_density(&y0, &y1, 2, 3, None, &d3, &spec, mode).unwrap(),
            BigRational::zero()
        );
        let mut prev = BigRational::one();
        for t in 0..=3 {
            let v = tail_density(&y0, &y1, 2, t, None, &d3, &spec, mode).unwrap();
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn factor_degrees() {
        let ring = PolyRing::new(crate::gf::GaloisField::prime(2).unwrap());
        // x^2 (x^3 + x + 1)
        let f = Poly::from_coeffs([0, 0, 1, 0, 1, 1].iter().map(|&c| Gf(c)).collect());
        assert!(has_factor_degree_in(&ring, &f, 1, 1));
        assert!(!has_factor_degree_in(&ring, &f, 2, 2));
        assert!(has_factor_degree_in(&ring, &f, 2, 3));
        assert!(!has_factor_degree_in(&ring, &Poly::one(), 1, 5));
    }

    #[test]
    fn configuration_measures() {
        let spec = f2x();
        let none = ramified_configuration_measure(&spec, &BTreeSet::new(), 3, 1).unwrap();
        assert_eq!(none, r(29 * 29, 32 * 32));
        let x: BTreeSet<Place> = [Place::Finite(Poly::x())].into();
        assert_eq!(
            ramified_configuration_measure(&spec, &x, 3, 1).unwrap(),
            r(3 * 29, 32 * 32)
        );
        let inf: BTreeSet<Place> = [Place::Infinity].into();
        assert!(ramified_configuration_measure(&spec, &inf, 3, 1).is_err());
    }
}
