//! Veronese powers: naive and generated powers, the free-operad membership
//! test and quadratic Veronese presentations.

use std::collections::{BTreeMap, HashSet};

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::linalg::{kernel, Echelon};
use crate::opoly::{
    echelon_polys, permutations, Morphism, MonomialIndex, OperadPolynomial, Presentation, PresentationKind,
    SymmetricAction, WrittenPolynomial,
};
use crate::rewrite::{buchberger, is_quadratic_up_to, Bound, GroebnerData, Reducer};
use crate::tree::{
    enumerate_tree_monomials, enumerate_unshuffles, left_comb, right_divisors_weight, split_right_divisor,
    GeneratorSymbol, Kind, MonomialOrder, TreeMonomial, Unshuffle,
};

/// Largest arity reachable with total weight `w`.
fn max_arity_for_weight(gens: &[GeneratorSymbol], w: usize) -> usize {
    let best = gens
        .iter()
        .map(|g| (g.arity.saturating_sub(1) as f64) / g.weight as f64)
        .fold(0.0, f64::max);
    1 + (best * w as f64).floor() as usize
}

/// Gröbner data complete up to `max_arity` (weights bounded by the arity).
pub fn gb_up_to(p: &Presentation, max_arity: usize, max_weight: Option<usize>) -> Result<GroebnerData> {
    buchberger(p, Bound::for_arity(p, max_arity, max_weight)?)
}

/// dims of the part of weight divisible by d, arity by arity.
pub fn naive_dims(p: &Presentation, d: usize, max_arity: usize) -> Result<Vec<u64>> {
    naive_dims_from(&gb_up_to(p, max_arity, None)?, d, max_arity)
}

pub fn naive_dims_from(gb: &GroebnerData, d: usize, max_arity: usize) -> Result<Vec<u64>> {
    check_d(d)?;
    let mut out = vec![0u64; max_arity];
    if max_arity >= 1 {
        out[0] = 1;
    }
    for ((a, w), v) in gb.normal_monomials_by_level(max_arity)? {
        if w > 0 && w % d == 0 {
            out[a - 1] += v.len() as u64;
        }
    }
    Ok(out)
}

fn check_d(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    Ok(())
}

/// Whether a free-operad monomial is a composite of pieces with d vertices,
/// by repeatedly cutting off its right divisors with d vertices.
pub fn free_membership(t: &TreeMonomial, d: usize) -> bool {
    if d == 0 || t.node_count() % d != 0 {
        return false;
    }
    let mut cur = t.clone();
    while !cur.is_unit() {
        let r = right_divisors_weight(&cur, d);
        if r.is_empty() {
            return false;
        }
        // cut from the rightmost occurrence so earlier positions stay valid
        for occ in r.iter().rev() {
            cur = split_right_divisor(&cur, occ.root).0;
        }
    }
    true
}

/// Exhaustive search over all ways of cutting off a connected block of d
/// vertices containing the root.
pub fn free_membership_brute(t: &TreeMonomial, d: usize) -> bool {
    // shape as a list of children per node, preorder
    fn shape(toks: &[u32]) -> Vec<Vec<usize>> {
        let nodes: Vec<usize> = (0..toks.len()).filter(|&i| crate::tree::is_node(toks[i])).collect();
        let idx = |p: usize| nodes.iter().position(|&q| q == p).unwrap();
        nodes
            .iter()
            .map(|&p| {
                crate::tree::child_positions(toks, p)
                    .into_iter()
                    .filter(|&c| crate::tree::is_node(toks[c]))
                    .map(idx)
                    .collect()
            })
            .collect()
    }
    fn size(ch: &[Vec<usize>], v: usize) -> usize {
        1 + ch[v].iter().map(|&c| size(ch, c)).sum::<usize>()
    }
    fn decomposable(ch: &[Vec<usize>], root: usize, d: usize) -> bool {
        if size(ch, root) % d != 0 {
            return false;
        }
        // grow connected blocks from the root
        fn grow(
            ch: &[Vec<usize>],
            block: &mut Vec<usize>,
            frontier: Vec<usize>,
            d: usize,
            seen: &mut HashSet<Vec<usize>>,
        ) -> bool {
            if block.len() == d {
                let mut key = block.clone();
                key.sort_unstable();
                if !seen.insert(key) {
                    return false;
                }
                return frontier.iter().all(|&f| decomposable(ch, f, d));
            }
            for (k, &f) in frontier.iter().enumerate() {
                let mut next: Vec<usize> = frontier[..k].iter().chain(&frontier[k + 1..]).copied().collect();
                next.extend(&ch[f]);
                block.push(f);
                let ok = grow(ch, block, next, d, seen);
                block.pop();
                if ok {
                    return true;
                }
            }
            false
        }
        let mut block = vec![root];
        let mut seen = HashSet::new();
        grow(ch, &mut block, ch[root].clone(), d, &mut seen)
    }
    if d == 0 {
        return false;
    }
    if t.is_unit() {
        return true;
    }
    let ch = shape(t.tokens());
    decomposable(&ch, 0, d)
}

/// Generators of the Veronese power: the normal monomials of weight d.
#[derive(Clone, Debug, Serialize)]
pub struct VeroneseBasisY {
    pub source: String,
    pub d: usize,
    pub kind: Kind,
    pub source_gens: Vec<GeneratorSymbol>,
    #[serde(skip)]
    pub monomials: Vec<TreeMonomial>,
    pub gens: Vec<GeneratorSymbol>,
}

impl VeroneseBasisY {
    pub fn texts(&self) -> Vec<String> {
        self.monomials.iter().map(|m| m.text(&self.source_gens)).collect()
    }

    /// Images of the y generators in the source.
    pub fn images(&self) -> Vec<OperadPolynomial> {
        self.monomials
            .iter()
            .map(|m| OperadPolynomial::monomial(m.clone(), Rational::one()))
            .collect()
    }

    pub fn max_arity(&self) -> usize {
        self.gens.iter().map(|g| g.arity).max().unwrap_or(1)
    }
}

pub fn generators(p: &Presentation, d: usize) -> Result<VeroneseBasisY> {
    check_d(d)?;
    let a = max_arity_for_weight(&p.gens, d);
    generators_from(&gb_up_to(p, a, Some(d))?, d)
}

pub fn generators_from(gb: &GroebnerData, d: usize) -> Result<VeroneseBasisY> {
    check_d(d)?;
    let gens = gb.gens();
    let top = max_arity_for_weight(gens, d);
    if !gb.bound.contains(top.min(gb.bound.max_arity), d) || gb.bound.max_arity < top {
        return Err(Error::NotCompleted(format!("weight {d} up to arity {top} is outside the completed region")));
    }
    let mut monomials = Vec::new();
    for ((_, w), v) in gb.normal_monomials_by_level(top)? {
        if w == d {
            monomials.extend(v);
        }
    }
    monomials.sort_by_cached_key(|m| (m.arity(), gb.order.key(m)));
    let ys = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| GeneratorSymbol::new(&format!("y{}", i + 1), m.arity(), m.parity(), d))
        .collect::<Result<Vec<_>>>()?;
    Ok(VeroneseBasisY {
        source: gb.presentation.name.clone(),
        d,
        kind: gb.kind(),
        source_gens: gens.to_vec(),
        monomials,
        gens: ys,
    })
}

/// Evaluates combinations over source generators through their images,
/// reducing to normal form in the target.
pub struct Evaluator<'a> {
    kind: Kind,
    images: Vec<OperadPolynomial>,
    actions: Option<Vec<Option<SymmetricAction>>>,
    reducer: Reducer<'a>,
    gb: &'a GroebnerData,
}

impl<'a> Evaluator<'a> {
    /// Images must be polynomials over `gb`'s shuffle generators. With
    /// `actions`, source terms may be written in any leaf order and are
    /// canonicalized with the target's symmetric structure.
    pub fn new(gb: &'a GroebnerData, images: Vec<OperadPolynomial>, actions: Option<Vec<Option<SymmetricAction>>>) -> Self {
        Evaluator {
            kind: gb.kind(),
            images,
            actions,
            reducer: gb.reducer(),
            gb,
        }
    }

    pub fn from_basis(gb: &'a GroebnerData, y: &VeroneseBasisY) -> Self {
        Evaluator::new(gb, y.images(), None)
    }

    pub fn gb(&self) -> &GroebnerData {
        self.gb
    }

    pub fn eval_term(&mut self, t: &crate::tree::Term) -> Result<OperadPolynomial> {
        let m = Morphism {
            images: &self.images,
            kind: self.kind,
            target_gens: self.gb.gens(),
            target_actions: self.actions.as_deref(),
        };
        let raw = m.apply(t)?;
        self.reducer.reduce(&raw)
    }

    pub fn eval(&mut self, p: &OperadPolynomial) -> Result<OperadPolynomial> {
        let mut out = OperadPolynomial::zero();
        for (t, c) in p.terms() {
            let v = self.eval_term(&t.to_term())?;
            out.add_scaled(&v, c);
        }
        Ok(out)
    }

    pub fn eval_written(&mut self, w: &WrittenPolynomial) -> Result<OperadPolynomial> {
        let mut out = OperadPolynomial::zero();
        for (c, t) in &w.terms {
            let v = self.eval_term(t)?;
            out.add_scaled(&v, c);
        }
        Ok(out)
    }

    /// Kernel of evaluation on the span of `monos`, as combinations of them
    /// in reduced echelon form.
    pub fn kernel(&mut self, monos: &[TreeMonomial], order: &MonomialOrder, limit: Option<usize>) -> Result<Vec<OperadPolynomial>> {
        let values: Vec<OperadPolynomial> = monos
            .iter()
            .map(|m| self.eval_term(&m.to_term()))
            .collect::<Result<_>>()?;
        let target = MonomialIndex::from_monomials(
            self.gb.order.clone(),
            values.iter().flat_map(|v| v.terms().map(|(t, _)| t.clone())).collect::<Vec<_>>(),
        );
        let src = MonomialIndex::from_monomials(order.clone(), monos.iter().cloned());
        // kernel() works over the given source order
        let mut imgs = vec![Vec::new(); monos.len()];
        for (m, v) in monos.iter().zip(&values) {
            imgs[src.column(m).unwrap()] = target.to_vec(v);
        }
        let k = kernel(&imgs, limit)?;
        Ok(k.iter().map(|r| src.to_poly(r)).collect())
    }
}

fn to_written(p: &OperadPolynomial, order: &MonomialOrder) -> WrittenPolynomial {
    WrittenPolynomial {
        terms: p.sorted_terms(order).into_iter().map(|(t, c)| (c, t.to_term())).collect(),
    }
}

/// Arities of trees with `k` vertices labelled by `gens`.
fn arities_with_vertices(gens: &[GeneratorSymbol], k: usize) -> Vec<usize> {
    let mut cur: HashSet<usize> = [1usize].into_iter().collect();
    for _ in 0..k {
        cur = cur.iter().flat_map(|&a| gens.iter().map(move |g| a + g.arity - 1)).collect();
    }
    let mut v: Vec<usize> = cur.into_iter().collect();
    v.sort_unstable();
    v
}

fn presentation_name(source: &str, d: usize) -> String {
    let base: String = source.chars().filter(|c| c.is_alphanumeric() || *c == ':' || *c == '_').collect();
    let base = if base.is_empty() { "p".to_string() } else { base };
    format!("{base}:q{d}")
}

/// Presentation of the quadratic Veronese power: generators y_i, relations
/// the kernel of evaluation on two-vertex trees.
pub fn quadratic_veronese(p: &Presentation, d: usize) -> Result<Presentation> {
    check_d(d)?;
    let ya = max_arity_for_weight(&p.gens, d);
    let gb = gb_up_to(p, 2 * ya - 1, Some(2 * d))?;
    let y = generators_from(&gb, d)?;
    quadratic_veronese_from(&gb, &y, None)
}

pub fn quadratic_veronese_from(gb: &GroebnerData, y: &VeroneseBasisY, limit: Option<usize>) -> Result<Presentation> {
    let order = MonomialOrder::new(gb.presentation.order, y.gens.len());
    let mut ev = Evaluator::from_basis(gb, y);
    let mut rels = Vec::new();
    for n in arities_with_vertices(&y.gens, 2) {
        let monos = enumerate_tree_monomials(y.kind, &y.gens, n, Some(2 * y.d), &order)?;
        for r in ev.kernel(&monos, &order, limit)? {
            rels.push(to_written(&r, &order));
        }
    }
    let kind = match y.kind {
        Kind::Shuffle => PresentationKind::Shuffle,
        Kind::Nonsymmetric => PresentationKind::Nonsymmetric,
    };
    Presentation::new(
        &presentation_name(&y.source, y.d),
        kind,
        y.gens.clone(),
        vec![None; y.gens.len()],
        rels,
        gb.presentation.order,
    )
}

/// Presentation of the Veronese power with relations up to `max_vertices`
/// y-vertices; records how many relations each vertex count contributes
/// beyond the consequences of the lower ones.
#[derive(Clone, Debug)]
pub struct VeronesePresentation {
    pub presentation: Presentation,
    /// (number of y-vertices, new relations)
    pub new_relations: Vec<(usize, usize)>,
}

pub fn veronese_presentation(p: &Presentation, d: usize, max_vertices: usize) -> Result<VeronesePresentation> {
    check_d(d)?;
    let ya = max_arity_for_weight(&p.gens, d);
    let top = 1 + max_vertices * (ya - 1);
    let gb = gb_up_to(p, top, Some(max_vertices * d))?;
    let y = generators_from(&gb, d)?;
    let mut pres = quadratic_veronese_from(&gb, &y, None)?;
    let order = pres.monomial_order();
    let mut ev = Evaluator::from_basis(&gb, &y);
    let mut new_relations = vec![(2, pres.relations.len())];
    for k in 3..=max_vertices {
        let mut added = Vec::new();
        for n in arities_with_vertices(&y.gens, k) {
            let monos = enumerate_tree_monomials(y.kind, &y.gens, n, Some(k * d), &order)?;
            let ker = ev.kernel(&monos, &order, None)?;
            if ker.is_empty() {
                continue;
            }
            let qgb = buchberger(&pres, Bound { max_arity: n, max_weight: k * d })?;
            let mut fresh = Vec::new();
            for r in &ker {
                let nf = qgb.normal_form(r)?;
                if !nf.is_zero() {
                    fresh.push(nf);
                }
            }
            for r in echelon_polys(&fresh, &order)? {
                added.push(to_written(&r, &order));
            }
        }
        new_relations.push((k, added.len()));
        let mut rels = pres.relations.clone();
        rels.extend(added);
        pres = Presentation::new(&pres.name, pres.kind, pres.gens.clone(), pres.actions.clone(), rels, pres.order)?;
    }
    Ok(VeronesePresentation {
        presentation: pres,
        new_relations,
    })
}

fn unshuffles_for(kind: Kind, i: usize, m: usize, n: usize) -> Result<Vec<Unshuffle>> {
    match kind {
        Kind::Nonsymmetric => Ok(vec![Unshuffle::identity(i, m, n)]),
        Kind::Shuffle => enumerate_unshuffles(i, m, n),
    }
}

/// Dimensions of the suboperad generated by the weight-d part, obtained by
/// grafting y generators below a spanning set until the arity bound.
pub fn suboperad_dims(p: &Presentation, d: usize, max_arity: usize) -> Result<Vec<u64>> {
    let gb = gb_up_to(p, max_arity, None)?;
    suboperad_dims_from(&gb, d, max_arity, None)
}

pub fn suboperad_dims_from(gb: &GroebnerData, d: usize, max_arity: usize, limit: Option<usize>) -> Result<Vec<u64>> {
    check_d(d)?;
    let y = generators_from(gb, d)?;
    let levels = gb.normal_monomials_by_level(max_arity)?;
    let kind = gb.kind();
    let mut red = gb.reducer();
    // spanning rows per (arity, weight)
    let mut span: BTreeMap<(usize, usize), (MonomialIndex, Echelon)> = BTreeMap::new();
    let index_for = |a: usize, w: usize| {
        MonomialIndex::from_monomials(gb.order.clone(), levels.get(&(a, w)).cloned().unwrap_or_default())
    };
    for m in &y.monomials {
        let key = (m.arity(), d);
        if m.arity() > max_arity {
            continue;
        }
        let entry = span.entry(key).or_insert_with(|| (index_for(key.0, key.1), Echelon::with_limit(limit)));
        let v = entry.0.to_vec(&OperadPolynomial::monomial(m.clone(), Rational::one()));
        entry.1.insert(v)?;
    }
    let ypolys = y.images();
    let mut w = d;
    while w + d <= gb.bound.max_weight {
        let current: Vec<((usize, usize), Vec<OperadPolynomial>)> = span
            .iter()
            .filter(|((_, ww), _)| *ww == w)
            .map(|(k, (idx, e))| (*k, e.rows_sorted().iter().map(|r| idx.to_poly(r)).collect()))
            .collect();
        if current.is_empty() {
            break;
        }
        for ((a, _), rows) in current {
            for (yi, yp) in ypolys.iter().enumerate() {
                let ya = y.gens[yi].arity;
                let n = a + ya - 1;
                if n > max_arity {
                    continue;
                }
                let key = (n, w + d);
                if !span.contains_key(&key) {
                    span.insert(key, (index_for(n, w + d), Echelon::with_limit(limit)));
                }
                for s in &rows {
                    for i in 1..=a {
                        for sigma in unshuffles_for(kind, i, ya, a)? {
                            let c = crate::opoly::substitute(s, i, &sigma, yp)?;
                            let nf = red.reduce(&c)?;
                            if nf.is_zero() {
                                continue;
                            }
                            let entry = span.get_mut(&key).unwrap();
                            let v = entry.0.to_vec(&nf);
                            entry.1.insert(v)?;
                        }
                    }
                }
            }
        }
        w += d;
    }
    let mut out = vec![0u64; max_arity];
    if max_arity >= 1 {
        out[0] = 1;
    }
    for ((a, _), (_, e)) in &span {
        out[a - 1] += e.rank() as u64;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwReport {
    pub holds: bool,
    pub quadratic: bool,
    pub offending: Vec<(String, usize)>,
    /// weight-2d normal monomials that are not composites of weight-d pieces
    pub non_members: Vec<String>,
}

/// Sufficient criterion for a quadratic Gröbner basis of the Veronese power.
pub fn pbw_check(p: &Presentation, d: usize) -> Result<PbwReport> {
    check_d(d)?;
    let top = max_arity_for_weight(&p.gens, 2 * d);
    let gb = gb_up_to(p, top, Some(2 * d))?;
    let q = is_quadratic_up_to(&gb);
    let mut non_members = Vec::new();
    for ((_, w), v) in gb.normal_monomials_by_level(top)? {
        if w == 2 * d {
            for m in v {
                if !free_membership(&m, d) {
                    non_members.push(m.text(gb.gens()));
                }
            }
        }
    }
    Ok(PbwReport {
        holds: q.quadratic && non_members.is_empty(),
        quadratic: q.quadratic,
        offending: q.offending,
        non_members,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LeftCombReport {
    pub spans: bool,
    /// (arity, rank of the left-comb orbits, dimension)
    pub ranks: Vec<(usize, usize, usize)>,
}

fn comb_labels(gens: &[GeneratorSymbol], n: usize) -> Vec<Vec<usize>> {
    fn go(gens: &[GeneratorSymbol], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 && !cur.is_empty() {
            out.push(cur.clone());
            return;
        }
        for (i, g) in gens.iter().enumerate() {
            if g.arity >= 2 && g.arity - 1 <= left {
                cur.push(i);
                go(gens, left - (g.arity - 1), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        go(gens, n - 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Whether symmetric-group orbits of left combs of generators span each
/// arity component up to `max_arity`.
pub fn leftcomb_spanning(p: &Presentation, max_arity: usize) -> Result<LeftCombReport> {
    if p.has_unary() {
        return Err(Error::Unsupported("left combs need generators of arity at least 2".into()));
    }
    let gb = gb_up_to(p, max_arity, None)?;
    let mut red = gb.reducer();
    let kind = gb.kind();
    let levels = gb.normal_monomials_by_level(max_arity)?;
    let mut ranks = Vec::new();
    for n in 2..=max_arity {
        let normal: Vec<TreeMonomial> = levels
            .iter()
            .filter(|((a, _), _)| *a == n)
            .flat_map(|(_, v)| v.iter().cloned())
            .collect();
        let index = MonomialIndex::from_monomials(gb.order.clone(), normal.iter().cloned());
        let mut e = Echelon::new();
        let perms = if p.kind == PresentationKind::Symmetric {
            permutations(n)
        } else {
            vec![(1..=n as u32).collect()]
        };
        for labels in comb_labels(&p.gens, n) {
            let t = left_comb(kind, &p.gens, &labels)?.to_term();
            for perm in &perms {
                let r = t.relabel(&|l| perm[l as usize - 1]);
                let (s, m) = p.canonicalize(&r)?;
                let c = if s < 0 { -Rational::one() } else { Rational::one() };
                let nf = red.reduce(&OperadPolynomial::monomial(m, c))?;
                e.insert(index.to_vec(&nf))?;
                if e.rank() == normal.len() {
                    break;
                }
            }
        }
        ranks.push((n, e.rank(), normal.len()));
    }
    Ok(LeftCombReport {
        spans: ranks.iter().all(|r| r.1 == r.2),
        ranks,
    })
}

/// Dimensions of di-P: n · dim P(n).
pub fn di_dims(dims: &[u64]) -> Vec<u64> {
    dims.iter().enumerate().map(|(i, &x)| (i as u64 + 1) * x).collect()
}

/// Free-operad dims restricted to weights divisible by d, for reference.
pub fn free_naive_dims(gens: &[GeneratorSymbol], kind: Kind, d: usize, max_arity: usize) -> Result<Vec<u64>> {
    check_d(d)?;
    let order = MonomialOrder::new(Default::default(), gens.len());
    let mut out = vec![0u64; max_arity];
    if max_arity >= 1 {
        out[0] = 1;
    }
    for n in 2..=max_arity {
        let all = enumerate_tree_monomials(kind, gens, n, None, &order)?;
        out[n - 1] = all.iter().filter(|t| t.weight() % d == 0).count() as u64;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;

    fn comb(k: usize) -> TreeMonomial {
        let g = vec![GeneratorSymbol::new("m", 2, 0, 1).unwrap()];
        left_comb(Kind::Nonsymmetric, &g, &vec![0; k]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let g = vec![GeneratorSymbol::new("m", 2, 0, 1).unwrap()];
        let mu3 = comb(3);
        let mu1 = comb(1);
        let nu = crate::tree::compose(&mu3, 3, &Unshuffle::identity(3, 2, 4), &mu1).unwrap().0;
        assert!(!free_membership(&nu, 2));
        assert!(!free_membership_brute(&nu, 2));
        for d in 1..4 {
            assert!(free_membership(&comb(2 * d), d));
            assert!(free_membership(&comb(d), d));
        }
        assert_eq!(nu.text(&g), "m(m(m(1,2),m(3,4)),5)");
    }

    #[test]
    fn lie_generators() {
        let y = generators(&preset("lie").unwrap(), 2).unwrap();
        assert_eq!(y.gens.len(), 2);
        assert!(y.gens.iter().all(|g| g.arity == 3));
        assert_eq!(generators(&preset("com").unwrap(), 2).unwrap().gens.len(), 1);
        assert_eq!(generators(&preset("prelie").unwrap(), 2).unwrap().gens.len(), 9);
    }

    #[test]
    fn naive_and_generated() {
        let lie = preset("lie").unwrap();
        assert_eq!(naive_dims(&lie, 2, 5).unwrap(), vec![1, 0, 2, 0, 24]);
        assert_eq!(suboperad_dims(&lie, 2, 5).unwrap(), vec![1, 0, 2, 0, 24]);
        assert_eq!(naive_dims(&preset("com").unwrap(), 2, 5).unwrap(), vec![1, 0, 1, 0, 1]);
        let free = preset("free").unwrap();
        let n = naive_dims(&free, 2, 5).unwrap();
        let s = suboperad_dims(&free, 2, 5).unwrap();
        assert_eq!(n[4], 105);
        assert!(s[4] < n[4]);
    }

    #[test]
    fn quadratic_veronese_vanishes() {
        let lie = preset("lie").unwrap();
        let q = quadratic_veronese(&lie, 2).unwrap();
        let gb = gb_up_to(&lie, 5, None).unwrap();
        let y = generators_from(&gb, 2).unwrap();
        let mut ev = Evaluator::from_basis(&gb, &y);
        let order = q.monomial_order();
        let free_count = enumerate_tree_monomials(Kind::Shuffle, &q.gens, 5, Some(4), &order).unwrap().len();
        assert_eq!(free_count - q.relations.len(), 24);
        for r in &q.relations {
            assert!(ev.eval_written(r).unwrap().is_zero());
        }
    }

    #[test]
    fn pbw_and_combs() {
        assert!(pbw_check(&preset("lie").unwrap(), 2).unwrap().holds);
        assert!(pbw_check(&preset("com").unwrap(), 3).unwrap().holds);
        let e1 = pbw_check(&preset("example1").unwrap(), 2).unwrap();
        assert!(!e1.holds && !e1.quadratic);
        for name in ["lie", "com", "ass"] {
            assert!(leftcomb_spanning(&preset(name).unwrap(), 5).unwrap().spans, "{name}");
        }
        let f = leftcomb_spanning(&preset("free").unwrap(), 5).unwrap();
        assert!(!f.spans);
        assert_eq!(f.ranks.last().unwrap().0, 5);
    }

    #[test]
    fn di_lie_is_leib() {
        let lie = crate::rewrite::dims(&preset("lie").unwrap(), 5).unwrap();
        let leib = crate::rewrite::dims(&preset("leib").unwrap(), 5).unwrap();
        assert_eq!(di_dims(&lie), leib);
        assert_eq!(di_dims(&[1, 0, 0]), vec![1, 0, 0]);
    }
}
