//! The reproduction battery: one check per acceptance criterion, plus the
//! seeded property checks they use.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{BernoulliTable, Rational};
use crate::linalg::{rank, SparseVec};
use crate::opoly::{MonomialIndex, OperadPolynomial, Presentation};
use crate::presets::{self, preset};
use crate::rewrite::{self, span_dims, span_reduce_levels};
use crate::tree::{
    compose, enumerate_tree_monomials, enumerate_unshuffles, formula_order_sign, GeneratorSymbol, Kind, MonomialOrder, OrderSpec,
    TreeMonomial, Unshuffle,
};
use crate::{cobar, dual, series, veronese};

pub const TITLES: [&str; 10] = [
    "Lie and LTS dimensions",
    "tCom dimensions and the cubic Groebner element",
    "naive versus generated Veronese powers",
    "non-quadratic Veronese counterexamples",
    "triple-system identities",
    "duality and pure homotopy operads",
    "GK series inversion and positivity",
    "recurrence and asymptotics",
    "cobar boundary and non-bounding cycle",
    "property suites",
];

/// Criteria whose literal statement cannot hold; the suite still runs them
/// and reports the failure.
pub const KNOWN_UNATTAINABLE: &[usize] = &[8];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({:.1}s): {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.seconds,
            self.detail
        )
    }
}

type Check = Result<(bool, String)>;

pub fn criterion(id: usize, seed: u64) -> Result<CriterionResult> {
    let f: fn(u64) -> Check = match id {
        1 => |_| c1(),
        2 => |_| c2(),
        3 => |_| c3(),
        4 => |_| c4(),
        5 => |_| c5(),
        6 => |_| c6(),
        7 => |_| c7(),
        8 => |_| c8(),
        9 => c9,
        10 => c10,
        _ => return Err(Error::Precondition(format!("no criterion {id}"))),
    };
    let t = Instant::now();
    let (pass, detail) = match f(seed) {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    Ok(CriterionResult {
        id,
        title: TITLES[id - 1].to_string(),
        pass,
        detail,
        seconds: t.elapsed().as_secs_f64(),
    })
}

pub fn run_suite(ids: &[usize], seed: u64) -> Result<Vec<CriterionResult>> {
    ids.iter().map(|&i| criterion(i, seed)).collect()
}

fn fact(n: u64) -> u64 {
    (1..=n).product()
}

fn c1() -> Check {
    let lie = preset("lie")?;
    let d = rewrite::dims(&lie, 8)?;
    let want: Vec<u64> = (1..=8).map(|n| fact(n - 1)).collect();
    let s = veronese::suboperad_dims(&lie, 2, 7)?;
    let odd = vec![s[2], s[4], s[6]];
    let ok = d == want && odd == vec![2, 24, 720];
    Ok((ok, format!("dims(lie,8) = {d:?}; suboperad_dims(lie,2) at 3,5,7 = {odd:?}")))
}

fn cubic_right(p: &Presentation) -> Result<TreeMonomial> {
    let s = p.to_shuffle()?;
    let g = &s.gens[0];
    let c = TreeMonomial::corolla(Kind::Shuffle, 0, g);
    let n = g.arity;
    let inner = compose(&c, n, &Unshuffle::identity(n, n, n), &c)?.0;
    Ok(compose(&c, n, &Unshuffle::identity(n, inner.arity(), n), &inner)?.0)
}

fn c2() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, d) in [(2, 0), (2, 1), (3, 0), (3, 1), (4, 1)] {
        let name = format!("tcom:{n}:{d}");
        let p = preset(&name)?;
        let gb = veronese::gb_up_to(&p, 10, None)?;
        let dims = gb.dims(10)?;
        let known = presets::known_dims(&name)?;
        let matches = (1..=10).all(|a| known.get(a).is_none_or(|k| k == dims[a - 1]));
        let mut cubic = true;
        if d % 2 == 1 {
            let m = cubic_right(&p)?;
            cubic = gb.basis.iter().any(|r| r.len() == 1 && r.terms().next().unwrap().0 == &m);
        }
        ok &= matches && cubic;
        notes.push(format!("{name} {dims:?}{}", if d % 2 == 1 { format!(" cubic={cubic}") } else { String::new() }));
    }
    Ok((ok, notes.join("; ")))
}

fn c3() -> Check {
    let g = vec![GeneratorSymbol::new("m", 2, 0, 1)?];
    let comb = |k: usize| crate::tree::left_comb(Kind::Nonsymmetric, &g, &vec![0; k]);
    let nu = compose(&comb(3)?, 3, &Unshuffle::identity(3, 2, 4), &comb(1)?)?.0;
    let member = veronese::free_membership(&nu, 2);
    let free = preset("free")?;
    let naive = veronese::naive_dims(&free, 2, 5)?;
    let sub = veronese::suboperad_dims(&free, 2, 5)?;
    let ok = !member && sub[4] < naive[4];
    Ok((
        ok,
        format!("free_membership({}, 2) = {member}; arity 5: generated {} < naive {}", nu.text(&g), sub[4], naive[4]),
    ))
}

/// outer o_slot inner with the identity unshuffle.
fn ycompose(outer: &TreeMonomial, slot: usize, inner: &TreeMonomial) -> Result<TreeMonomial> {
    Ok(compose(outer, slot, &Unshuffle::identity(slot, inner.arity(), outer.arity()), inner)?.0)
}

/// A Y-monomial lies outside the quadratic ideal yet vanishes in P.
fn new_cubic(p: &Presentation, d: usize, t: &TreeMonomial) -> Result<(bool, bool)> {
    let gb = veronese::gb_up_to(p, t.arity(), None)?;
    let y = veronese::generators_from(&gb, d)?;
    let q = veronese::quadratic_veronese_from(&gb, &y, None)?;
    let qgb = veronese::gb_up_to(&q, t.arity(), None)?;
    let outside = !qgb.normal_form(&OperadPolynomial::monomial(t.clone(), Rational::from_integer(1.into())))?.is_zero();
    let mut ev = veronese::Evaluator::from_basis(&gb, &y);
    let vanishes = ev.eval_term(&t.to_term())?.is_zero();
    Ok((outside, vanishes))
}

fn ygen_index(y: &veronese::VeroneseBasisY, text: &str) -> Result<usize> {
    y.texts()
        .iter()
        .position(|s| s == text)
        .ok_or_else(|| Error::Precondition(format!("no Y generator for {text}")))
}

fn ygen(y: &veronese::VeroneseBasisY, text: &str) -> Result<TreeMonomial> {
    let i = ygen_index(y, text)?;
    Ok(TreeMonomial::corolla(y.kind, i, &y.gens[i]))
}

fn c4() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    let e1 = preset("example1")?;
    for d in [2usize, 3] {
        let y = veronese::generators(&e1, d)?;
        let comb = crate::tree::left_comb(Kind::Nonsymmetric, &e1.gens, &vec![0; d])?;
        let w = ygen(&y, &comb.text(&e1.gens))?;
        let inner = ycompose(&w, d + 1, &w)?;
        let t = ycompose(&w, d + 1, &inner)?;
        let (outside, vanishes) = new_cubic(&e1, d, &t)?;
        let vp = veronese::veronese_presentation(&e1, d, 3)?;
        let cubic = vp.new_relations.iter().any(|&(v, k)| v == 3 && k > 0);
        ok &= outside && vanishes && cubic;
        notes.push(format!(
            "example1 d={d}: {} new={outside} zero={vanishes} relations {:?}",
            t.text(&y.gens),
            vp.new_relations
        ));
    }
    let e2 = preset("example2")?;
    let y = veronese::generators(&e2, 2)?;
    let a = ygen(&y, "nu(nu(1,2),3)")?;
    let b = ygen(&y, "mu(1,nu(2,3))")?;
    let dd = ygen(&y, "nu(1,nu(2,3))")?;
    // normal form of B o_1 D inside O
    let gb = veronese::gb_up_to(&e2, 5, None)?;
    let bm = &y.monomials[ygen_index(&y, "mu(1,nu(2,3))")?];
    let dm = &y.monomials[ygen_index(&y, "nu(1,nu(2,3))")?];
    let bd = compose(bm, 1, &Unshuffle::identity(1, 3, 3), dm)?.0;
    let nf = gb.normal_form(&OperadPolynomial::monomial(bd, Rational::from_integer(1.into())))?;
    let nf_text = nf.text(gb.gens(), &gb.order);
    let nf_ok = nf_text == "1 * rho(1,nu(nu(2,3),nu(4,5)))";
    ok &= nf_ok;
    notes.push(format!("example2 NF(B o1 D) = {nf_text}"));
    let vp = veronese::veronese_presentation(&e2, 2, 3)?;
    let cubic_count = vp.new_relations.iter().find(|x| x.0 == 3).map_or(0, |x| x.1);
    for (label, inner_last) in [("B o1 (D o1 A)", &a), ("B o1 (D o1 D)", &dd)] {
        let inner = ycompose(&dd, 1, inner_last)?;
        let t = ycompose(&b, 1, &inner)?;
        let (outside, vanishes) = new_cubic(&e2, 2, &t)?;
        ok &= outside && vanishes;
        notes.push(format!("{label} = {}: new={outside} zero={vanishes}", t.text(&y.gens)));
    }
    ok &= cubic_count == 2;
    notes.push(format!("example2 new cubic relations: {cubic_count}"));
    Ok((ok, notes.join("; ")))
}

/// Kernel of the realization map versus the ideal of the presentation on
/// one (arity, weight) slice; returns (kernel rank, ideal rank, union rank).
pub fn realization_slice(name: &str, arity: usize, weight: usize) -> Result<(usize, usize, usize)> {
    let qp = preset(name)?;
    let r = presets::realization(name)?;
    let target = preset(&r.target)?;
    let gb = veronese::gb_up_to(&target, arity * 2, None)?;
    let imgs: Vec<OperadPolynomial> = r.images.iter().map(|w| target.written_to_poly(w)).collect::<Result<_>>()?;
    let mut ev = veronese::Evaluator::new(&gb, imgs, Some(target.actions.clone()));
    let qs = qp.to_shuffle()?;
    let order = qs.monomial_order();
    let monos = enumerate_tree_monomials(Kind::Shuffle, &qs.gens, arity, Some(weight), &order)?;
    let k = ev.kernel(&monos, &order, crate::linalg::default_limit())?;
    let levels = span_reduce_levels(&qp, arity, Some(weight), None)?;
    let ideal = levels.get(&(arity, weight)).map(|s| s.relations.clone()).unwrap_or_default();
    let idx = MonomialIndex::from_monomials(order, monos);
    let kv: Vec<SparseVec> = k.iter().map(|p| idx.to_vec(p)).collect();
    let iv: Vec<SparseVec> = ideal.iter().map(|p| idx.to_vec(p)).collect();
    let mut both = kv.clone();
    both.extend(iv.iter().cloned());
    Ok((rank(&kv, None)?, rank(&iv, None)?, rank(&both, None)?))
}

fn c5() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for name in ["lts", "tcom:3:0", "tass"] {
        let (k, i, u) = realization_slice(name, 5, 2)?;
        ok &= k == i && i == u;
        notes.push(format!("{name} arity 5: kernel {k} ideal {i} union {u}"));
    }
    // JTS relations inside Jord
    let jts = preset("jts")?;
    let r = presets::realization("jts")?;
    let jord = preset(&r.target)?;
    let gb = veronese::gb_up_to(&jord, 5, None)?;
    let imgs: Vec<OperadPolynomial> = r.images.iter().map(|w| jord.written_to_poly(w)).collect::<Result<_>>()?;
    let mut ev = veronese::Evaluator::new(&gb, imgs, Some(jord.actions.clone()));
    let mut zero = 0;
    for rel in &jts.relations {
        if ev.eval_written(rel)?.is_zero() {
            zero += 1;
        }
    }
    ok &= zero == jts.relations.len();
    notes.push(format!("jts relations vanishing in jord: {zero}/{}", jts.relations.len()));
    let prelie = preset("prelie")?;
    let gb = veronese::gb_up_to(&prelie, 5, None)?;
    let imgs: Vec<OperadPolynomial> =
        presets::prelie_triple_images()?.iter().map(|w| prelie.written_to_poly(w)).collect::<Result<_>>()?;
    let mut ev = veronese::Evaluator::new(&gb, imgs, Some(prelie.actions.clone()));
    let corpus = presets::prelie_triple_corpus()?;
    let mut zero = 0;
    for rel in &corpus {
        if ev.eval_written(rel)?.is_zero() {
            zero += 1;
        }
    }
    ok &= zero == corpus.len();
    notes.push(format!("pre-Lie triple relations vanishing: {zero}/{}", corpus.len()));
    Ok((ok, notes.join("; ")))
}

fn c6() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    let lie = preset("lie")?;
    let com = preset("com")?;
    let q = veronese::quadratic_veronese(&lie, 2)?;
    let dq = dual::quadratic_dual(&q)?.presentation;
    let dd = rewrite::dims(&dq, 7)?;
    let table = BernoulliTable::new(16);
    let tangent: Vec<u64> =
        (2..=4).map(|n| series::tangent_dims(n, &table).map(|b| u64::try_from(b).unwrap_or(0))).collect::<Result<_>>()?;
    let got = vec![dd[2], dd[4], dd[6]];
    ok &= got == tangent;
    notes.push(format!("dual(qLie[2]) at 3,5,7 = {got:?}, tangent numbers {tangent:?}"));
    let ph = dual::pure_homotopy(&com, 2)?.presentation;
    let pd = rewrite::dims(&ph, 7)?;
    let got = vec![pd[2], pd[4], pd[6]];
    ok &= got == vec![1, 9, 225];
    notes.push(format!("pure(Com,2) at 3,5,7 = {got:?}"));
    for (name, p) in [("lie", &lie), ("com", &com)] {
        for k in [2, 3] {
            let a = dual::pure_homotopy(p, k)?.presentation;
            let b = dual::dual_of_quadratic_veronese(p, k)?.presentation;
            let same = dual::same_relation_spaces(&a, &b)?;
            ok &= same;
            notes.push(format!("pure({name},{k}) = dual(q{name}[{k}]): {same}"));
        }
    }
    Ok((ok, notes.join("; ")))
}

fn c7() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    let table = BernoulliTable::new(12);
    let lts = veronese::naive_dims(&preset("lie")?, 2, 9)?;
    let com3: Vec<u64> = (1..=9usize)
        .map(|n| {
            if n % 2 == 1 {
                series::tangent_dims(n.div_ceil(2), &table).map(|b| u64::try_from(b).unwrap_or(0))
            } else {
                Ok(0)
            }
        })
        .collect::<Result<_>>()?;
    let r = series::gk_check_dims(&lts, 2, &com3, 9)?;
    ok &= r.inverse_relation;
    notes.push(format!("(LTS, Com_inf3) to order 9: {}", r.inverse_relation));
    let ones: Vec<u64> = rewrite::dims(&preset("tcom:3:0")?, 9)?;
    let mut linf = rewrite::dims(&dual::pure_homotopy(&preset("com")?, 2)?.presentation, 7)?;
    let known = presets::known_dims("linf3")?;
    linf.extend([0, known.get(9).unwrap_or(0)]);
    let r = series::gk_check_dims(&ones, 2, &linf, 9)?;
    ok &= r.inverse_relation;
    notes.push(format!("(Com[2], L_inf3) to order 9: {}", r.inverse_relation));
    let mock2 = series::egf_from_dims(&[1, 1, 1], &series::SignMode::Alternating(1))?;
    let neg = series::positivity_scan(&series::lagrange_invert(&mock2, 12)?);
    ok &= neg.is_some();
    notes.push(format!("inverse of t - t^2/2 + t^3/6: first negative at {neg:?}"));
    let inv = series::lagrange_invert(&series::mock_series(401), 401)?;
    let none = series::positivity_scan(&inv);
    ok &= none.is_none();
    notes.push(format!("inverse of t - t^3/6 + t^5/120 to order 401: negative at {none:?}"));
    Ok((ok, notes.join("; ")))
}

fn c8() -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    let lag = series::lagrange_invert(&series::mock_series(201), 201)?;
    let closed = (0..=100).all(|n| series::inverse_coefficient_an(n) == lag.coeff(2 * n + 1));
    ok &= closed;
    notes.push(format!("closed form = Lagrange for n <= 100: {closed}"));
    let r = series::ratio_report(200)?;
    let rec = r.recurrence_violations_a.is_empty() && r.recurrence_violations_b.is_empty();
    ok &= rec && r.a_over_b_strictly_decreasing;
    notes.push(format!("recurrence 2..200: {rec}; a/b strictly decreasing: {}", r.a_over_b_strictly_decreasing));
    let (ra, rb) = (r.a_ratio_tail.last().unwrap().1, r.b_ratio_tail.last().unwrap().1);
    let da = (ra - 0.9905853066).abs();
    let db = (rb - 3.696914693).abs();
    let raw = da < 1e-6 && db < 1e-4;
    ok &= raw;
    notes.push(format!(
        "a200/a199 = {ra:.10} (off {da:.2e}), b200/b199 = {rb:.10} (off {db:.2e}); extrapolated {:.10}, {:.10}",
        r.a_ratio_extrapolated, r.b_ratio_extrapolated
    ));
    Ok((ok, notes.join("; ")))
}

fn c9(seed: u64) -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [2usize, 3] {
        let r = cobar::pure_cycle_report(n, seed)?;
        let good = r.boundary.solvable
            && r.d_squared_zero
            && r.cycle_closed
            && r.not_a_boundary
            && r.omega_in_beta == "0"
            && r.omega_in_alpha != "0";
        ok &= good;
        notes.push(format!(
            "n={n}: boundary solvable={} (support {}/{}), d^2=0 {}, cycle closed {}, ranks {} -> {}, omega in alpha {} in beta {}",
            r.boundary.solvable,
            r.boundary.support,
            r.boundary.source_size,
            r.d_squared_zero,
            r.cycle_closed,
            r.image_rank,
            r.augmented_rank,
            r.omega_in_alpha,
            r.omega_in_beta
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn c10(seed: u64) -> Check {
    let oc = order_compatibility(1000, seed)?;
    let sa = signed_associativity(1000, seed)?;
    let oa = oracle_agreement(6)?;
    let fm = membership_agreement(6)?;
    let ok = oc.violations == 0 && sa.violations == 0 && oa.violations == 0 && fm.violations == 0;
    Ok((ok, format!("order {oc}; associativity {sa}; oracle {oa}; membership {fm}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyTally {
    pub checked: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl std::fmt::Display for PropertyTally {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} checked, {} violations", self.checked, self.violations)
    }
}

impl PropertyTally {
    fn new() -> Self {
        PropertyTally { checked: 0, violations: 0, first_violation: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(what());
            }
        }
    }
}

fn sample_gens() -> Vec<GeneratorSymbol> {
    vec![
        GeneratorSymbol::new("a", 2, 1, 1).unwrap(),
        GeneratorSymbol::new("c", 3, 0, 1).unwrap(),
        GeneratorSymbol::new("e", 2, 0, 1).unwrap(),
    ]
}

fn random_unshuffle(rng: &mut StdRng, kind: Kind, i: usize, m: usize, n: usize) -> Unshuffle {
    match kind {
        Kind::Nonsymmetric => Unshuffle::identity(i, m, n),
        Kind::Shuffle => {
            let us = enumerate_unshuffles(i, m, n).unwrap();
            us[rng.gen_range(0..us.len())].clone()
        }
    }
}

/// A random monomial with 1..=max_nodes vertices.
pub fn random_monomial(rng: &mut StdRng, gens: &[GeneratorSymbol], kind: Kind, max_nodes: usize) -> TreeMonomial {
    let pick = |rng: &mut StdRng| {
        let g = rng.gen_range(0..gens.len());
        TreeMonomial::corolla(kind, g, &gens[g])
    };
    let mut t = pick(rng);
    for _ in 1..rng.gen_range(1..=max_nodes) {
        let c = pick(rng);
        let slot = rng.gen_range(1..=t.arity());
        let u = random_unshuffle(rng, kind, slot, c.arity(), t.arity());
        t = compose(&t, slot, &u, &c).unwrap().0;
    }
    t
}

/// S < T implies S o U < T o U and U o S < U o T, for random pairs of
/// equal arity and random contexts, under both shipped orders.
pub fn order_compatibility(samples: usize, seed: u64) -> Result<PropertyTally> {
    let gens = sample_gens();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut tally = PropertyTally::new();
    let mut tries = 0;
    while tally.checked < samples && tries < samples * 200 {
        tries += 1;
        let kind = if rng.gen_bool(0.5) { Kind::Shuffle } else { Kind::Nonsymmetric };
        let spec = if rng.gen_bool(0.5) { OrderSpec::rpdl() } else { OrderSpec::pdl() };
        let o = MonomialOrder::new(spec, gens.len());
        let a = random_monomial(&mut rng, &gens, kind, 4);
        let b = random_monomial(&mut rng, &gens, kind, 4);
        if a.arity() != b.arity() || a == b {
            continue;
        }
        let c = random_monomial(&mut rng, &gens, kind, 3);
        let (lo, hi) = if o.key(&a) < o.key(&b) { (a, b) } else { (b, a) };
        let slot = rng.gen_range(1..=c.arity());
        let u = random_unshuffle(&mut rng, kind, slot, lo.arity(), c.arity());
        let x = compose(&c, slot, &u, &lo)?.0;
        let y = compose(&c, slot, &u, &hi)?.0;
        let slot2 = rng.gen_range(1..=lo.arity());
        let u2 = random_unshuffle(&mut rng, kind, slot2, c.arity(), lo.arity());
        let x2 = compose(&lo, slot2, &u2, &c)?.0;
        let y2 = compose(&hi, slot2, &u2, &c)?.0;
        let ok = o.key(&x) < o.key(&y) && o.key(&x2) < o.key(&y2);
        tally.record(ok, || format!("{} < {} in context {}", lo.text(&gens), hi.text(&gens), c.text(&gens)));
    }
    Ok(tally)
}

/// Two-step compositions (a o b) o c carry the orientation sign of the
/// formula order a, b, c, whichever of a and b receives c. Since that sign
/// does not depend on the bracketing, this is signed associativity.
pub fn signed_associativity(samples: usize, seed: u64) -> Result<PropertyTally> {
    let gens = sample_gens();
    let mut rng = StdRng::seed_from_u64(seed.wrapping_add(1));
    let mut tally = PropertyTally::new();
    while tally.checked < samples {
        let a = random_monomial(&mut rng, &gens, Kind::Shuffle, 3);
        let b = random_monomial(&mut rng, &gens, Kind::Shuffle, 3);
        let c = random_monomial(&mut rng, &gens, Kind::Shuffle, 3);
        let i = rng.gen_range(1..=a.arity());
        let u = random_unshuffle(&mut rng, Kind::Shuffle, i, b.arity(), a.arity());
        let (ab, e1) = compose(&a, i, &u, &b)?;
        let j = rng.gen_range(1..=ab.arity());
        let v = random_unshuffle(&mut rng, Kind::Shuffle, j, c.arity(), ab.arity());
        let (x, e2) = compose(&ab, j, &v, &c)?;
        let (y, f) = formula_order_sign(&a, i, &u, &b, j, &v, &c)?;
        tally.record(x == y && e1 * e2 == f, || {
            format!("{} from {} {} {}", x.text(&gens), a.text(&gens), b.text(&gens), c.text(&gens))
        });
    }
    Ok(tally)
}

/// Buchberger dimensions against the linear-algebra oracle for every
/// fixed-name preset and the shipped family members.
pub fn oracle_agreement(max_arity: usize) -> Result<PropertyTally> {
    let mut tally = PropertyTally::new();
    for name in presets::shipped() {
        let p = preset(&name)?;
        let a = rewrite::dims(&p, max_arity)?;
        let b = span_dims(&p, max_arity, crate::linalg::default_limit())?;
        tally.record(a == b, || format!("{name}: {a:?} vs {b:?}"));
    }
    Ok(tally)
}

/// free_membership against brute force on all binary monomials with at most
/// `max_nodes` vertices, both kinds, d = 1..=3.
pub fn membership_agreement(max_nodes: usize) -> Result<PropertyTally> {
    let g = vec![GeneratorSymbol::new("m", 2, 0, 1)?];
    let mut tally = PropertyTally::new();
    for kind in [Kind::Nonsymmetric, Kind::Shuffle] {
        let o = MonomialOrder::new(OrderSpec::rpdl(), 1);
        for nodes in 1..=max_nodes {
            for t in enumerate_tree_monomials(kind, &g, nodes + 1, Some(nodes), &o)? {
                for d in 1..=3 {
                    let a = veronese::free_membership(&t, d);
                    let b = veronese::free_membership_brute(&t, d);
                    tally.record(a == b, || format!("{} d={d}: {a} vs {b}", t.text(&g)));
                }
            }
        }
    }
    Ok(tally)
}
