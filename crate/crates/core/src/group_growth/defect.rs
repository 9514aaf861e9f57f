use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    class_product_table, conjugacy_classes, ClassMask, ClassProductTable, ConjugacyDecomposition, FiniteGroupTable,
};
use crate::error::{Error, Result};
use crate::exec::{map_slice, Exec};
use crate::series::{q, Polynomial, RationalGf, TruncatedSeries};

pub const DEFAULT_DEFECT_BUDGET: usize = 20_000_000;

/// Defect of one lattice point `k̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectRecord {
    pub kbar: Vec<i64>,
    pub product_class_mask: ClassMask,
    pub product_size: usize,
    pub defect: usize,
}

/// Shape of the support of the defect measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportClass {
    /// Finitely many nonzero defects; the defect series is a polynomial.
    Finite,
    /// Finitely many points off a finite set of axis-parallel rays of constant defect.
    FinitePlusAxisRays,
    /// An exact closed form exists but the support is not explained by axis rays.
    Cones,
    /// No closed form within the state budget.
    TruncatedOnly,
}

/// A half-line `start + s·sign·e_class`, `s ≥ 0`, of constant nonzero defect.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxisRay {
    pub class: usize,
    pub sign: i8,
    pub start: Vec<i64>,
    pub value: usize,
}

impl AxisRay {
    pub fn start_degree(&self) -> usize {
        self.start.iter().map(|k| k.unsigned_abs() as usize).sum()
    }
}

/// `numerator / (1 − t^period)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricTail {
    pub numerator: Polynomial,
    pub period: usize,
}

/// A closed form written as a polynomial plus geometric tails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectPresentation {
    pub polynomial: Polynomial,
    pub tails: Vec<GeometricTail>,
}

impl DefectPresentation {
    pub fn to_gf(&self) -> RationalGf {
        self.tails.iter().fold(RationalGf::from_poly(self.polynomial.clone()), |acc, tail| {
            let mut den = vec![0i64; tail.period + 1];
            den[0] = 1;
            den[tail.period] = -1;
            let gf = RationalGf::new(tail.numerator.clone(), Polynomial::from_ints(&den)).expect("valid");
            &acc + &gf
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectSeriesResult {
    pub truncated: TruncatedSeries,
    pub closed_form: Option<RationalGf>,
    pub classification: SupportClass,
    pub presentation: Option<DefectPresentation>,
    pub rays: Vec<AxisRay>,
    pub diagnostic: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DefectOptions {
    pub exec: Exec,
    pub budget_states: usize,
}

impl Default for DefectOptions {
    fn default() -> Self {
        DefectOptions { exec: Exec::default(), budget_states: DEFAULT_DEFECT_BUDGET }
    }
}

/// Powers `C^0, C^1, …` of a class as masks; eventually periodic.
#[derive(Clone, Debug)]
struct PowerSequence {
    masks: Vec<ClassMask>,
    mu: usize,
    lambda: usize,
}

impl PowerSequence {
    fn new(table: &ClassProductTable, class: usize) -> Self {
        let mut masks = vec![ClassMask::single(0)];
        let mut seen = HashMap::from([(ClassMask::single(0), 0usize)]);
        loop {
            let next = table.product_class(*masks.last().expect("nonempty"), class);
            if let Some(&a) = seen.get(&next) {
                return PowerSequence { mu: a, lambda: masks.len() - a, masks };
            }
            seen.insert(next, masks.len());
            masks.push(next);
        }
    }

    fn at(&self, k: usize) -> ClassMask {
        if k < self.masks.len() {
            self.masks[k]
        } else {
            self.masks[self.mu + (k - self.mu) % self.lambda]
        }
    }
}

/// Precomputed class data for defect computations on one group.
#[derive(Clone, Debug)]
pub struct DefectContext {
    dec: ConjugacyDecomposition,
    table: ClassProductTable,
    derived: ClassMask,
    derived_size: usize,
    powers: Vec<PowerSequence>,
}

type IPoly = Vec<i128>;

fn overflow() -> Error {
    Error::Internal("integer overflow in defect numerator".into())
}

fn ipoly_mul(a: &IPoly, b: &IPoly) -> Result<IPoly> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let p = x.checked_mul(y).ok_or_else(overflow)?;
            out[i + j] = out[i + j].checked_add(p).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}

fn ipoly_add_into(acc: &mut IPoly, b: &IPoly, scale: i128) -> Result<()> {
    if acc.len() < b.len() {
        acc.resize(b.len(), 0);
    }
    for (i, &y) in b.iter().enumerate() {
        let p = y.checked_mul(scale).ok_or_else(overflow)?;
        acc[i] = acc[i].checked_add(p).ok_or_else(overflow)?;
    }
    Ok(())
}

fn ipoly_to_poly(a: &IPoly) -> Polynomial {
    Polynomial::from_coeffs(a.iter().map(|&c| num_rational::BigRational::from_integer(c.into())).collect())
}

impl DefectContext {
    pub fn new(g: &FiniteGroupTable) -> Result<Self> {
        let dec = conjugacy_classes(g)?;
        let table = class_product_table(g, &dec);
        Ok(Self::from_parts(dec, table))
    }

    pub fn from_parts(dec: ConjugacyDecomposition, table: ClassProductTable) -> Self {
        let derived = table.derived_classes();
        let derived_size = table.size_of(derived);
        let powers = (0..table.num_classes()).map(|i| PowerSequence::new(&table, i)).collect();
        DefectContext { dec, table, derived, derived_size, powers }
    }

    pub fn decomposition(&self) -> &ConjugacyDecomposition {
        &self.dec
    }

    pub fn table(&self) -> &ClassProductTable {
        &self.table
    }

    pub fn num_classes(&self) -> usize {
        self.table.num_classes()
    }

    /// Lattice dimension `c − 1`.
    pub fn dimension(&self) -> usize {
        self.num_classes() - 1
    }

    pub fn derived_classes(&self) -> ClassMask {
        self.derived
    }

    pub fn derived_size(&self) -> usize {
        self.derived_size
    }

    /// `C_i^k` as a mask; negative `k` uses the inverse class.
    pub fn power(&self, class: usize, k: i64) -> ClassMask {
        if k >= 0 {
            self.powers[class].at(k as usize)
        } else {
            self.powers[self.table.inverse(class)].at(k.unsigned_abs() as usize)
        }
    }

    fn is_full(&self, m: ClassMask) -> bool {
        self.table.size_of(m) == self.derived_size
    }

    fn defect_of(&self, m: ClassMask) -> usize {
        self.derived_size - self.table.size_of(m)
    }

    /// `δ(k̄) = |[G,G]| − |∏ C_i^{k_i}|`, with `kbar[j]` the exponent of class `j + 1`.
    pub fn measure(&self, kbar: &[i64]) -> Result<DefectRecord> {
        if kbar.len() != self.dimension() {
            return Err(Error::Invalid(format!("k̄ must have length {}, got {}", self.dimension(), kbar.len())));
        }
        let mask = kbar
            .iter()
            .enumerate()
            .fold(ClassMask::single(0), |m, (j, &k)| self.table.product(m, self.power(j + 1, k)));
        let size = self.table.size_of(mask);
        Ok(DefectRecord {
            kbar: kbar.to_vec(),
            product_class_mask: mask,
            product_size: size,
            defect: self.derived_size - size,
        })
    }

    /// Truncated defect series by explicit enumeration of the L1 ball.
    pub fn truncated(&self, order: usize, exec: Exec, budget: usize) -> Result<TruncatedSeries> {
        let m = self.dimension();
        if m == 0 {
            let mut s = vec![0i64; order + 1];
            s[0] = self.defect_of(ClassMask::single(0)) as i64;
            return Ok(TruncatedSeries::from_ints(&s));
        }
        let symmetric = self.table.all_self_inverse();
        let nodes = AtomicUsize::new(0);
        let ks: Vec<i64> =
            if symmetric { (0..=order as i64).collect() } else { (-(order as i64)..=order as i64).collect() };
        let parts = map_slice(exec, &ks, |&k| {
            let mut acc = vec![0i128; order + 1];
            let w = if symmetric && k != 0 { 2 } else { 1 };
            let mask = self.power(1, k);
            self.walk(2, mask, k.unsigned_abs() as usize, w, order, symmetric, &mut acc, &nodes, budget)?;
            Ok::<_, Error>(acc)
        });
        let mut total = vec![0i128; order + 1];
        for p in parts {
            for (t, x) in total.iter_mut().zip(p?) {
                *t += x;
            }
        }
        Ok(TruncatedSeries::new(total.iter().map(|&c| num_rational::BigRational::from_integer(c.into())).collect()))
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        class: usize,
        mask: ClassMask,
        used: usize,
        weight: i128,
        order: usize,
        symmetric: bool,
        acc: &mut [i128],
        nodes: &AtomicUsize,
        budget: usize,
    ) -> Result<()> {
        if self.is_full(mask) {
            return Ok(());
        }
        if nodes.fetch_add(1, Ordering::Relaxed) > budget {
            return Err(Error::BudgetExceeded(format!("defect enumeration exceeded {budget} nodes")));
        }
        if class == self.num_classes() {
            acc[used] += weight * self.defect_of(mask) as i128;
            return Ok(());
        }
        let rem = (order - used) as i64;
        let lo = if symmetric { 0 } else { -rem };
        for k in lo..=rem {
            let w = if symmetric && k != 0 { 2 * weight } else { weight };
            let next = self.table.product(mask, self.power(class, k));
            self.walk(class + 1, next, used + k.unsigned_abs() as usize, w, order, symmetric, acc, nodes, budget)?;
        }
        Ok(())
    }

    /// All lattice points with `lo ≤ |k̄| ≤ hi` and nonzero defect, sorted by degree then coordinates.
    pub fn nonzero_points(&self, lo: usize, hi: usize, exec: Exec, budget: usize) -> Result<Vec<DefectRecord>> {
        let m = self.dimension();
        if m == 0 {
            let d = self.defect_of(ClassMask::single(0));
            return Ok(if lo == 0 && d > 0 { vec![self.measure(&[])?] } else { Vec::new() });
        }
        let nodes = AtomicUsize::new(0);
        let ks: Vec<i64> = (-(hi as i64)..=hi as i64).collect();
        let parts = map_slice(exec, &ks, |&k| {
            let mut out = Vec::new();
            let mut point = vec![k];
            self.collect(2, self.power(1, k), &mut point, lo, hi, &mut out, &nodes, budget)?;
            Ok::<_, Error>(out)
        });
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all.sort_by_key(|r| (r.kbar.iter().map(|k| k.unsigned_abs()).sum::<u64>(), r.kbar.clone()));
        Ok(all)
    }

    #[allow(clippy::too_many_arguments)]
    fn collect(
        &self,
        class: usize,
        mask: ClassMask,
        point: &mut Vec<i64>,
        lo: usize,
        hi: usize,
        out: &mut Vec<DefectRecord>,
        nodes: &AtomicUsize,
        budget: usize,
    ) -> Result<()> {
        if self.is_full(mask) {
            return Ok(());
        }
        if nodes.fetch_add(1, Ordering::Relaxed) > budget {
            return Err(Error::BudgetExceeded(format!("point enumeration exceeded {budget} nodes")));
        }
        let used: usize = point.iter().map(|k| k.unsigned_abs() as usize).sum();
        if class == self.num_classes() {
            if used >= lo {
                let size = self.table.size_of(mask);
                out.push(DefectRecord {
                    kbar: point.clone(),
                    product_class_mask: mask,
                    product_size: size,
                    defect: self.derived_size - size,
                });
            }
            return Ok(());
        }
        let rem = (hi - used) as i64;
        for k in -rem..=rem {
            point.push(k);
            let next = self.table.product(mask, self.power(class, k));
            self.collect(class + 1, next, point, lo, hi, out, nodes, budget)?;
            point.pop();
        }
        Ok(())
    }

    /// Common period `L` of all class power sequences.
    fn common_period(&self) -> usize {
        (1..self.num_classes()).fold(1usize, |l, i| l.lcm(&self.powers[i].lambda))
    }

    /// Per-coordinate options: mask of `C_i^k` with the numerator of
    /// `Σ_{k: C_i^k = mask} t^{|k|}` over `1 − t^L`.
    fn options(&self, class: usize, big_l: usize) -> Vec<(ClassMask, IPoly)> {
        let mut map: BTreeMap<ClassMask, IPoly> = BTreeMap::new();
        let mut add = |m: ClassMask, p: IPoly| {
            let e = map.entry(m).or_default();
            ipoly_add_into(e, &p, 1).expect("small coefficients");
        };
        let finite = |k: usize| {
            let mut p = vec![0i128; k + big_l + 1];
            p[k] = 1;
            p[k + big_l] = -1;
            p
        };
        add(ClassMask::single(0), finite(0));
        for side in [class, self.table.inverse(class)] {
            let ps = &self.powers[side];
            let s = ps.mu.max(1);
            for k in 1..s {
                add(ps.at(k), finite(k));
            }
            for k in s..s + ps.lambda {
                let mut p = vec![0i128; k + big_l];
                for j in (0..big_l).step_by(ps.lambda) {
                    p[k + j] = 1;
                }
                add(ps.at(k), p);
            }
        }
        map.into_iter().collect()
    }

    /// Exact defect series as a rational function, by dynamic programming
    /// over partial products of class powers.
    pub fn closed_form(&self, exec: Exec, budget: usize) -> Result<RationalGf> {
        let big_l = self.common_period();
        let mut states: Vec<(ClassMask, IPoly)> = vec![(ClassMask::single(0), vec![1])];
        let mut work = 0usize;
        for class in 1..self.num_classes() {
            let opts = self.options(class, big_l);
            work += states.len() * opts.len();
            if work > budget {
                return Err(Error::BudgetExceeded(format!("closed-form search exceeded {budget} states")));
            }
            let parts = map_slice(exec, &states, |(m, acc)| {
                let mut out = Vec::with_capacity(opts.len());
                for (mi, f) in &opts {
                    let m2 = self.table.product(*m, *mi);
                    if !self.is_full(m2) {
                        out.push((m2, ipoly_mul(acc, f)?));
                    }
                }
                Ok::<_, Error>(out)
            });
            let mut next: BTreeMap<ClassMask, IPoly> = BTreeMap::new();
            for p in parts {
                for (m2, poly) in p? {
                    ipoly_add_into(next.entry(m2).or_default(), &poly, 1)?;
                }
            }
            states = next.into_iter().collect();
        }
        let mut num: IPoly = Vec::new();
        for (m, acc) in &states {
            ipoly_add_into(&mut num, acc, self.defect_of(*m) as i128)?;
        }
        let mut den1 = vec![0i64; big_l + 1];
        den1[0] = 1;
        den1[big_l] = -1;
        let den = Polynomial::from_ints(&den1).pow(self.dimension() as u32);
        Ok(RationalGf::new(ipoly_to_poly(&num), den)?.reduced())
    }

    /// Full defect series with classification.
    pub fn series(&self, order: usize, opts: DefectOptions) -> Result<DefectSeriesResult> {
        let truncated = self.truncated(order, opts.exec, opts.budget_states)?;
        let closed = match self.closed_form(opts.exec, opts.budget_states) {
            Ok(gf) => gf,
            Err(Error::BudgetExceeded(msg)) => {
                return Ok(DefectSeriesResult {
                    truncated,
                    closed_form: None,
                    classification: SupportClass::TruncatedOnly,
                    presentation: None,
                    rays: Vec::new(),
                    diagnostic: Some(msg),
                })
            }
            Err(e) => return Err(e),
        };
        if closed.expand(order) != truncated {
            return Err(Error::Internal("closed-form defect series disagrees with enumeration".into()));
        }
        if let Some(p) = closed.as_polynomial() {
            return Ok(DefectSeriesResult {
                truncated,
                closed_form: Some(closed),
                classification: SupportClass::Finite,
                presentation: Some(DefectPresentation { polynomial: p, tails: Vec::new() }),
                rays: Vec::new(),
                diagnostic: None,
            });
        }
        let big_l = self.common_period();
        let periodic = eventual_presentation(&closed, big_l);
        let rays = match &periodic {
            Some((_, n0)) => self.detect_rays(&closed, *n0, opts)?,
            None => None,
        };
        let (classification, presentation, rays, diagnostic) = match (rays, periodic) {
            (Some((rays, pres)), _) => (SupportClass::FinitePlusAxisRays, Some(pres), rays, None),
            (None, Some((pres, _))) => (
                SupportClass::Cones,
                Some(pres),
                Vec::new(),
                Some("eventually periodic coefficients not explained by axis rays".to_string()),
            ),
            (None, None) => {
                (SupportClass::Cones, None, Vec::new(), Some("denominator has a pole of order above one".to_string()))
            }
        };
        Ok(DefectSeriesResult { truncated, closed_form: Some(closed), classification, presentation, rays, diagnostic })
    }

    fn detect_rays(
        &self,
        closed: &RationalGf,
        n0: usize,
        opts: DefectOptions,
    ) -> Result<Option<(Vec<AxisRay>, DefectPresentation)>> {
        let stab = (1..self.num_classes()).map(|i| self.powers[i].mu + self.powers[i].lambda).max().unwrap_or(1);
        let radius = n0 + self.dimension() * stab + 2;
        let points = match self.nonzero_points(radius, radius, opts.exec, opts.budget_states) {
            Ok(p) => p,
            Err(Error::BudgetExceeded(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut rays = BTreeSet::new();
        for rec in points {
            let p = &rec.kbar;
            let best = p.iter().map(|k| k.unsigned_abs()).max().unwrap_or(0);
            let axes: Vec<usize> = (0..p.len()).filter(|&j| p[j].unsigned_abs() == best).collect();
            if axes.len() != 1 {
                return Ok(None);
            }
            let j = axes[0];
            let sign = p[j].signum();
            let class = j + 1;
            let seq = &self.powers[if sign > 0 { class } else { self.table.inverse(class) }];
            let at = |s: u64| -> Result<usize> {
                let mut x = p.clone();
                x[j] = sign * s as i64;
                Ok(self.measure(&x)?.defect)
            };
            let reach = (seq.mu.max(best as usize) + seq.lambda) as u64;
            for s in best + 1..=reach {
                if at(s)? != rec.defect {
                    return Ok(None);
                }
            }
            let mut s0 = best;
            while s0 > 1 && at(s0 - 1)? == rec.defect {
                s0 -= 1;
            }
            let mut start = p.clone();
            start[j] = sign * s0 as i64;
            rays.insert(AxisRay { class, sign: sign as i8, start, value: rec.defect });
        }
        let rays: Vec<AxisRay> = rays.into_iter().collect();
        let mut tail = Polynomial::zero();
        for r in &rays {
            tail = &tail + &Polynomial::monomial(q(r.value as i64), r.start_degree());
        }
        let tail_gf = RationalGf::new(tail.clone(), Polynomial::from_ints(&[1, -1]))?;
        let Some(poly) = (closed - &tail_gf).reduced().as_polynomial() else {
            return Ok(None);
        };
        let pres = DefectPresentation { polynomial: poly, tails: vec![GeometricTail { numerator: tail, period: 1 }] };
        Ok(Some((rays, pres)))
    }
}

/// `P + T/(1 − t^L)` with `T` supported on `[n0, n0 + L)`, when the
/// coefficients are eventually periodic with period `L`.
fn eventual_presentation(gf: &RationalGf, big_l: usize) -> Option<(DefectPresentation, usize)> {
    let mut den = vec![0i64; big_l + 1];
    den[0] = 1;
    den[big_l] = -1;
    let den = Polynomial::from_ints(&den);
    let (_, r) = den.div_rem(gf.den()).ok()?;
    if !r.is_zero() {
        return None;
    }
    let nd = gf.num().degree().unwrap_or(0);
    let dd = gf.den().degree().unwrap_or(0);
    let n0 = (nd + 1).saturating_sub(dd);
    let s = gf.expand(n0 + big_l);
    let polynomial = Polynomial::from_coeffs((0..n0).map(|i| s.coeff(i)).collect());
    let numerator = Polynomial::from_coeffs((0..n0 + big_l).map(|i| if i >= n0 { s.coeff(i) } else { q(0) }).collect());
    let pres = DefectPresentation { polynomial, tails: vec![GeometricTail { numerator, period: big_l }] };
    debug_assert!(pres.to_gf() == *gf);
    Some((pres, n0))
}

/// Defect of one lattice point.
pub fn defect_measure(
    _g: &FiniteGroupTable,
    dec: &ConjugacyDecomposition,
    table: &ClassProductTable,
    kbar: &[i64],
) -> Result<DefectRecord> {
    DefectContext::from_parts(dec.clone(), table.clone()).measure(kbar)
}

/// Defect series of a finite group, truncated at `order`, with a closed form when available.
pub fn defect_series(g: &FiniteGroupTable, order: usize, opts: DefectOptions) -> Result<DefectSeriesResult> {
    DefectContext::new(g)?.series(order, opts)
}

/// Growth of the structure group of the full conjugation solution of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullConjugationGrowth {
    pub series: TruncatedSeries,
    pub closed_form: Option<RationalGf>,
    pub derived_size: usize,
    pub num_classes: usize,
    pub defect: DefectSeriesResult,
}

/// `|[G,G]|·((1+t)/(1−t))^c − (1+t)²·Δ_G(t)`, for groups of commutator length one.
pub fn as_full_conjugation_gf(
    g: &FiniteGroupTable,
    order: usize,
    opts: DefectOptions,
) -> Result<FullConjugationGrowth> {
    let ctx = DefectContext::new(g)?;
    if !ctx.table().commutator_length_one() {
        let missing = ctx.derived_classes().0 & !ctx.table().commutator_classes().union(ClassMask::single(0)).0;
        return Err(Error::CommutatorLength(format!(
            "classes {} of [G,G] contain no single commutator",
            ClassMask(missing)
        )));
    }
    let defect = ctx.series(order, opts)?;
    let c = ctx.num_classes() as u32;
    let derived = q(ctx.derived_size() as i64);
    let main = RationalGf::integers().pow(c).scale(&derived);
    let sq = Polynomial::from_ints(&[1, 2, 1]);
    let series = &main.expand(order) - &(&sq.truncate(order) * &defect.truncated);
    let closed_form = defect.closed_form.as_ref().map(|d| (&main - &d.mul_poly(&sq)).reduced());
    if series.coeffs().iter().any(|x| !x.is_integer() || x < &num_rational::BigRational::zero()) {
        return Err(Error::Internal("growth coefficients are not non-negative integers".into()));
    }
    Ok(FullConjugationGrowth { series, closed_form, derived_size: ctx.derived_size(), num_classes: c as usize, defect })
}
