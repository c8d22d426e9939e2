//! Truncated Gröbner bases, normal forms, and dimensions.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::linalg::Echelon;
use crate::opoly::{MonomialIndex, OperadPolynomial, Presentation};
use crate::tree::{
    all_monomials_by_level, compose_unchecked, enumerate_unshuffles, is_node, node_token, occurrence_at,
    replace_occurrence, tok_weight, GeneratorSymbol, Kind, MonomialOrder, Occurrence, OrderKey, Term, TreeMonomial,
    Unshuffle,
};

/// Completion region: arities up to `max_arity` and weights up to
/// `max_weight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bound {
    pub max_arity: usize,
    pub max_weight: usize,
}

impl Bound {
    /// Without unary generators the weight is bounded by the arity.
    pub fn for_arity(p: &Presentation, max_arity: usize, max_weight: Option<usize>) -> Result<Bound> {
        let derived = if p.has_unary() {
            None
        } else {
            let wmax = p.gens.iter().map(|g| g.weight).max().unwrap_or(1);
            Some(max_arity.saturating_sub(1) * wmax)
        };
        let max_weight = match (max_weight, derived) {
            (Some(w), Some(d)) => w.min(d),
            (Some(w), None) => w,
            (None, Some(d)) => d,
            (None, None) => {
                return Err(Error::Precondition("unary generators need an explicit weight bound".into()));
            }
        };
        Ok(Bound { max_arity, max_weight })
    }

    pub fn contains(&self, arity: usize, weight: usize) -> bool {
        arity <= self.max_arity && weight <= self.max_weight
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerData {
    pub presentation: Presentation,
    pub order: MonomialOrder,
    pub bound: Bound,
    pub basis: Vec<OperadPolynomial>,
    leads: Vec<TreeMonomial>,
    tails: Vec<Vec<(TreeMonomial, Rational)>>,
    by_root: HashMap<u32, Vec<usize>>,
    pub spolys_processed: usize,
}

type Nf = Arc<Vec<(TreeMonomial, Rational)>>;

/// Memoizing monomial reducer.
pub struct Reducer<'a> {
    gb: &'a GroebnerData,
    cache: HashMap<TreeMonomial, Nf>,
}

impl<'a> Reducer<'a> {
    pub fn new(gb: &'a GroebnerData) -> Self {
        Reducer {
            gb,
            cache: HashMap::new(),
        }
    }

    fn monomial_nf(&mut self, t: &TreeMonomial) -> Nf {
        if let Some(v) = self.cache.get(t) {
            return v.clone();
        }
        let out = match self.gb.find_occurrence(t) {
            None => Arc::new(vec![(t.clone(), Rational::one())]),
            Some((k, occ)) => {
                let (_, el) = replace_occurrence(t, &occ, &self.gb.leads[k]);
                let mut acc: BTreeMap<TreeMonomial, Rational> = BTreeMap::new();
                let tail = self.gb.tails[k].clone();
                for (y, c) in &tail {
                    let (m, ey) = replace_occurrence(t, &occ, y);
                    let mut coef = -c.clone();
                    if el * ey < 0 {
                        coef = -coef;
                    }
                    let sub = self.monomial_nf(&m);
                    for (z, d) in sub.iter() {
                        let e = acc.entry(z.clone()).or_insert_with(Rational::zero);
                        *e += &coef * d;
                    }
                }
                Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            }
        };
        self.cache.insert(t.clone(), out.clone());
        out
    }

    pub fn reduce(&mut self, p: &OperadPolynomial) -> Result<OperadPolynomial> {
        if let (Some(a), Some(w)) = (p.arity(), p.weight()) {
            if !self.gb.bound.contains(a, w) {
                return Err(Error::NotCompleted(format!(
                    "arity {a}, weight {w} lies outside the completed region (arity <= {}, weight <= {})",
                    self.gb.bound.max_arity, self.gb.bound.max_weight
                )));
            }
        }
        Ok(self.reduce_unchecked(p))
    }

    fn reduce_unchecked(&mut self, p: &OperadPolynomial) -> OperadPolynomial {
        let mut out = OperadPolynomial::zero();
        for (t, c) in p.terms() {
            let nf = self.monomial_nf(t);
            for (z, d) in nf.iter() {
                out.add_term(z.clone(), c * d);
            }
        }
        out
    }
}

impl GroebnerData {
    pub fn leading_monomials(&self) -> &[TreeMonomial] {
        &self.leads
    }

    pub fn gens(&self) -> &[GeneratorSymbol] {
        &self.presentation.gens
    }

    pub fn kind(&self) -> Kind {
        self.presentation.tree_kind()
    }

    fn find_occurrence(&self, t: &TreeMonomial) -> Option<(usize, Occurrence)> {
        let toks = t.tokens();
        for p in 0..toks.len() {
            if !is_node(toks[p]) {
                continue;
            }
            if let Some(ks) = self.by_root.get(&toks[p]) {
                for &k in ks {
                    if let Some(o) = occurrence_at(&self.leads[k], t, p) {
                        return Some((k, o));
                    }
                }
            }
        }
        None
    }

    pub fn is_normal(&self, t: &TreeMonomial) -> bool {
        self.find_occurrence(t).is_none()
    }

    pub fn reducer(&self) -> Reducer<'_> {
        Reducer::new(self)
    }

    pub fn normal_form(&self, p: &OperadPolynomial) -> Result<OperadPolynomial> {
        self.reducer().reduce(p)
    }

    /// Normal monomials grouped by (arity, weight), ascending in the order.
    pub fn normal_monomials_by_level(&self, max_arity: usize) -> Result<BTreeMap<(usize, usize), Vec<TreeMonomial>>> {
        if max_arity > self.bound.max_arity {
            return Err(Error::NotCompleted(format!(
                "arity {max_arity} exceeds the completed arity {}",
                self.bound.max_arity
            )));
        }
        let mut levels = all_monomials_by_level(self.kind(), self.gens(), max_arity, self.bound.max_weight, &|t| {
            self.is_normal(t)
        });
        for v in levels.values_mut() {
            v.sort_by_cached_key(|t| self.order.key(t));
        }
        Ok(levels)
    }

    pub fn normal_monomials(&self, arity: usize, weight: Option<usize>) -> Result<Vec<TreeMonomial>> {
        let levels = self.normal_monomials_by_level(arity)?;
        let mut out: Vec<TreeMonomial> = levels
            .into_iter()
            .filter(|((a, w), _)| *a == arity && weight.map_or(true, |x| x == *w))
            .flat_map(|(_, v)| v)
            .collect();
        out.sort_by_cached_key(|t| self.order.key(t));
        Ok(out)
    }

    /// dim P(n) for n = 1..=max_arity.
    pub fn dims(&self, max_arity: usize) -> Result<Vec<u64>> {
        if self.presentation.has_unary() {
            return Err(Error::Unsupported("dimensions need a presentation without unary generators".into()));
        }
        let levels = self.normal_monomials_by_level(max_arity)?;
        let mut d = vec![0u64; max_arity];
        for ((a, _), v) in levels {
            d[a - 1] += v.len() as u64;
        }
        Ok(d)
    }

    pub fn text_basis(&self) -> Vec<String> {
        let mut v: Vec<String> = self.basis.iter().map(|p| p.text(self.gens(), &self.order)).collect();
        v.sort();
        v
    }
}

pub fn normal_form(p: &OperadPolynomial, g: &GroebnerData) -> Result<OperadPolynomial> {
    g.normal_form(p)
}

struct Merged {
    toks: Vec<u32>,
    nslots: usize,
    pos_x: usize,
    pos_y: usize,
    constraints: Vec<(Vec<usize>, Vec<usize>)>,
}

struct MergeBuilder<'a> {
    gens: &'a [GeneratorSymbol],
    toks: Vec<u32>,
    nslots: usize,
    attach_x: Vec<Vec<usize>>,
    attach_y: Vec<Vec<usize>>,
    children: Vec<Vec<Vec<usize>>>,
    pos_y: usize,
}

impl MergeBuilder<'_> {
    fn node(&mut self, g: usize) {
        self.toks.push(node_token(g, &self.gens[g]));
    }

    fn slot(&mut self) -> usize {
        let s = self.nslots;
        self.nslots += 1;
        self.toks.push(s as u32);
        s
    }

    fn only(&mut self, t: &Term, x_side: bool) -> Vec<usize> {
        match t {
            Term::Leaf(l) => {
                let s = self.slot();
                if x_side {
                    self.attach_x[*l as usize - 1] = vec![s];
                } else {
                    self.attach_y[*l as usize - 1] = vec![s];
                }
                vec![s]
            }
            Term::Node(g, cs) => {
                self.node(*g);
                let mut sets = Vec::new();
                for c in cs {
                    sets.push(self.only(c, x_side));
                }
                let all = sets.concat();
                self.children.push(sets);
                all
            }
        }
    }

    fn merge(&mut self, x: &Term, y: &Term) -> Option<Vec<usize>> {
        match (x, y) {
            (_, Term::Leaf(l)) => {
                let s = self.only(x, true);
                self.attach_y[*l as usize - 1] = s.clone();
                Some(s)
            }
            (Term::Leaf(l), _) => {
                let s = self.only(y, false);
                self.attach_x[*l as usize - 1] = s.clone();
                Some(s)
            }
            (Term::Node(gx, cx), Term::Node(gy, cy)) => {
                if gx != gy {
                    return None;
                }
                self.node(*gx);
                let mut sets = Vec::new();
                for (a, b) in cx.iter().zip(cy) {
                    sets.push(self.merge(a, b)?);
                }
                let all = sets.concat();
                self.children.push(sets);
                Some(all)
            }
        }
    }

    /// Emits X, merging Y at X's node with preorder index `v`.
    fn walk(&mut self, x: &Term, y: &Term, v: usize, counter: &mut usize) -> Option<Vec<usize>> {
        match x {
            Term::Leaf(_) => Some(self.only(x, true)),
            Term::Node(g, cs) => {
                if *counter == v {
                    *counter += 1;
                    self.pos_y = self.toks.len();
                    return self.merge(x, y);
                }
                *counter += 1;
                self.node(*g);
                let mut sets = Vec::new();
                for c in cs {
                    // nodes in this child subtree
                    sets.push(self.walk(c, y, v, counter)?);
                }
                let all = sets.concat();
                self.children.push(sets);
                Some(all)
            }
        }
    }
}

fn merge_at(gens: &[GeneratorSymbol], x: &TreeMonomial, y: &TreeMonomial, v: usize) -> Option<Merged> {
    let xt = x.to_term();
    let yt = y.to_term();
    let mut b = MergeBuilder {
        gens,
        toks: Vec::new(),
        nslots: 0,
        attach_x: vec![Vec::new(); x.arity()],
        attach_y: vec![Vec::new(); y.arity()],
        children: Vec::new(),
        pos_y: 0,
    };
    let mut counter = 0;
    b.walk(&xt, &yt, v, &mut counter)?;
    let mut constraints = Vec::new();
    for sets in &b.children {
        for w in sets.windows(2) {
            constraints.push((w[0].clone(), w[1].clone()));
        }
    }
    for w in b.attach_x.windows(2) {
        constraints.push((w[0].clone(), w[1].clone()));
    }
    for w in b.attach_y.windows(2) {
        constraints.push((w[0].clone(), w[1].clone()));
    }
    Some(Merged {
        toks: b.toks,
        nslots: b.nslots,
        pos_x: 0,
        pos_y: b.pos_y,
        constraints,
    })
}

/// Slot labelings satisfying all min(S) < min(S') constraints.
fn labelings(n: usize, constraints: &[(Vec<usize>, Vec<usize>)]) -> Vec<Vec<u32>> {
    let mut by_slot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, (_, s2)) in constraints.iter().enumerate() {
        for &x in s2 {
            by_slot[x].push(k);
        }
    }
    struct St<'a> {
        n: usize,
        cons: &'a [(Vec<usize>, Vec<usize>)],
        by_slot: Vec<Vec<usize>>,
        label: Vec<u32>,
        out: Vec<Vec<u32>>,
    }
    fn labeled(st: &St, s: &[usize]) -> bool {
        s.iter().any(|&x| st.label[x] != 0)
    }
    fn rec(st: &mut St, next: u32) {
        if next as usize > st.n {
            st.out.push(st.label.clone());
            return;
        }
        for x in 0..st.n {
            if st.label[x] != 0 {
                continue;
            }
            let ok = st.by_slot[x].iter().all(|&k| {
                let (a, b) = &st.cons[k];
                labeled(st, b) || labeled(st, a)
            });
            if ok {
                st.label[x] = next;
                rec(st, next + 1);
                st.label[x] = 0;
            }
        }
    }
    let mut st = St {
        n,
        cons: constraints,
        by_slot,
        label: vec![0; n],
        out: Vec::new(),
    };
    rec(&mut st, 1);
    st.out
}

/// Small common multiples of x and y with y's root on node v of x.
fn overlaps_at(
    kind: Kind,
    gens: &[GeneratorSymbol],
    x: &TreeMonomial,
    y: &TreeMonomial,
    v: usize,
    bound: &Bound,
) -> Vec<(TreeMonomial, Occurrence, Occurrence)> {
    let Some(m) = merge_at(gens, x, y, v) else { return Vec::new() };
    let weight: usize = m.toks.iter().filter(|t| is_node(**t)).map(|t| tok_weight(*t)).sum();
    if !bound.contains(m.nslots, weight) {
        return Vec::new();
    }
    let labs = match kind {
        Kind::Nonsymmetric => {
            let l: Vec<u32> = (1..=m.nslots as u32).collect();
            let ok = m.constraints.iter().all(|(a, b)| a.iter().min() < b.iter().min());
            if ok {
                vec![l]
            } else {
                vec![]
            }
        }
        Kind::Shuffle => labelings(m.nslots, &m.constraints),
    };
    let mut out = Vec::new();
    for lab in labs {
        let toks: Vec<u32> = m
            .toks
            .iter()
            .map(|&t| if is_node(t) { t } else { lab[t as usize] })
            .collect();
        let t = TreeMonomial::from_raw_checked(kind, toks);
        if let (Some(ox), Some(oy)) = (occurrence_at(x, &t, m.pos_x), occurrence_at(y, &t, m.pos_y)) {
            out.push((t, ox, oy));
        }
    }
    out
}

impl TreeMonomial {
    pub(crate) fn from_raw_checked(kind: Kind, toks: Vec<u32>) -> TreeMonomial {
        let n = toks.iter().filter(|t| !is_node(**t)).count();
        TreeMonomial::from_raw(kind, n, toks)
    }
}

struct Completion {
    kind: Kind,
    gb: GroebnerData,
    queue: BTreeMap<(usize, usize, OrderKey, usize), OperadPolynomial>,
    counter: usize,
    cache: HashMap<TreeMonomial, Nf>,
}

impl Completion {
    fn push(&mut self, p: OperadPolynomial) {
        if p.is_zero() {
            return;
        }
        let (lt, _) = p.leading(&self.gb.order).unwrap();
        let key = (lt.weight(), lt.arity(), self.gb.order.key(&lt), self.counter);
        self.counter += 1;
        self.queue.insert(key, p);
    }

    fn reduce(&mut self, p: &OperadPolynomial) -> OperadPolynomial {
        let mut r = Reducer {
            gb: &self.gb,
            cache: std::mem::take(&mut self.cache),
        };
        let out = r.reduce_unchecked(p);
        self.cache = r.cache;
        out
    }

    fn add(&mut self, lead: TreeMonomial, tail: Vec<(TreeMonomial, Rational)>) {
        let k = self.gb.leads.len();
        self.gb.by_root.entry(lead.tokens()[0]).or_default().push(k);
        let mut q = OperadPolynomial::monomial(lead.clone(), Rational::one());
        for (m, c) in &tail {
            q.add_term(m.clone(), c.clone());
        }
        self.gb.basis.push(q);
        self.gb.leads.push(lead);
        self.gb.tails.push(tail);
        self.cache.clear();
    }

    fn spolys(&self, a: usize, b: usize) -> Vec<OperadPolynomial> {
        let gens = &self.gb.presentation.gens;
        let mut out = Vec::new();
        let pairs: Vec<(usize, usize, bool)> = if a == b { vec![(a, a, false)] } else { vec![(a, b, false), (b, a, true)] };
        for (x, y, skip_root) in pairs {
            let lx = &self.gb.leads[x];
            let ly = &self.gb.leads[y];
            for v in 0..lx.node_count() {
                if (skip_root || x == y) && v == 0 {
                    continue;
                }
                for (t, ox, oy) in overlaps_at(self.kind, gens, lx, ly, v, &self.gb.bound) {
                    let mut s = OperadPolynomial::zero();
                    let (_, ex) = replace_occurrence(&t, &ox, lx);
                    let (_, ey) = replace_occurrence(&t, &oy, ly);
                    for (m, c) in &self.gb.tails[x] {
                        let (r, e) = replace_occurrence(&t, &ox, m);
                        s.add_term(r, if ex * e < 0 { -c.clone() } else { c.clone() });
                    }
                    for (m, c) in &self.gb.tails[y] {
                        let (r, e) = replace_occurrence(&t, &oy, m);
                        s.add_term(r, if ey * e < 0 { c.clone() } else { -c.clone() });
                    }
                    out.push(s);
                }
            }
        }
        out
    }
}

fn build_data(
    p: &Presentation,
    order: MonomialOrder,
    bound: Bound,
    leads: Vec<TreeMonomial>,
    tails: Vec<Vec<(TreeMonomial, Rational)>>,
    spolys: usize,
) -> GroebnerData {
    let mut by_root: HashMap<u32, Vec<usize>> = HashMap::new();
    for (k, l) in leads.iter().enumerate() {
        by_root.entry(l.tokens()[0]).or_default().push(k);
    }
    let basis = leads
        .iter()
        .zip(&tails)
        .map(|(l, t)| {
            let mut q = OperadPolynomial::monomial(l.clone(), Rational::one());
            for (m, c) in t {
                q.add_term(m.clone(), c.clone());
            }
            q
        })
        .collect();
    GroebnerData {
        presentation: p.clone(),
        order,
        bound,
        basis,
        leads,
        tails,
        by_root,
        spolys_processed: spolys,
    }
}

/// Buchberger completion up to the bound.
pub fn buchberger(p: &Presentation, bound: Bound) -> Result<GroebnerData> {
    let shuffle = p.to_shuffle()?;
    let order = shuffle.monomial_order();
    let rels = shuffle.shuffle_relations()?;
    let mut c = Completion {
        kind: shuffle.tree_kind(),
        gb: build_data(&shuffle, order.clone(), bound, Vec::new(), Vec::new(), 0),
        queue: BTreeMap::new(),
        counter: 0,
        cache: HashMap::new(),
    };
    for r in rels {
        if let (Some(a), Some(w)) = (r.arity(), r.weight()) {
            if bound.contains(a, w) {
                c.push(r);
            }
        }
    }
    let mut processed = 0usize;
    while let Some((_, poly)) = c.queue.pop_first() {
        processed += 1;
        let r = c.reduce(&poly);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(&order);
        let mut terms = r.sorted_terms(&order).into_iter();
        let (lt, _) = terms.next().unwrap();
        c.add(lt, terms.collect());
        let k = c.gb.leads.len() - 1;
        for j in 0..=k {
            for s in c.spolys(j, k) {
                c.push(s);
            }
        }
    }
    // inter-reduce tails
    let old_tails = c.gb.tails.clone();
    let mut tails = Vec::with_capacity(old_tails.len());
    for t in &old_tails {
        let mut q = OperadPolynomial::zero();
        for (m, x) in t {
            q.add_term(m.clone(), x.clone());
        }
        tails.push(c.reduce(&q).sorted_terms(&order));
    }
    let leads = c.gb.leads;
    let mut idx: Vec<usize> = (0..leads.len()).collect();
    idx.sort_by_cached_key(|&i| (leads[i].weight(), leads[i].arity(), order.key(&leads[i])));
    let sorted_leads: Vec<TreeMonomial> = idx.iter().map(|&i| leads[i].clone()).collect();
    let sorted_tails: Vec<_> = idx.iter().map(|&i| tails[i].clone()).collect();
    Ok(build_data(&shuffle, order, bound, sorted_leads, sorted_tails, processed))
}

#[derive(Clone, Debug)]
pub struct SpanReduction {
    pub leading: Vec<TreeMonomial>,
    pub normal: Vec<TreeMonomial>,
    pub relations: Vec<OperadPolynomial>,
}

/// Linear-algebra oracle: the ideal's slices up to `arity`, obtained by
/// composing relations with generators above and below, then row reduced.
pub fn span_reduce_levels(
    p: &Presentation,
    arity: usize,
    max_weight: Option<usize>,
    limit: Option<usize>,
) -> Result<BTreeMap<(usize, usize), SpanReduction>> {
    let shuffle = p.to_shuffle()?;
    let bound = Bound::for_arity(&shuffle, arity, max_weight)?;
    let order = shuffle.monomial_order();
    let kind = shuffle.tree_kind();
    let gens = &shuffle.gens;
    let all = all_monomials_by_level(kind, gens, arity, bound.max_weight, &|_| true);
    let corollas: Vec<TreeMonomial> = gens.iter().enumerate().map(|(i, g)| TreeMonomial::corolla(kind, i, g)).collect();
    let mut seeds: BTreeMap<(usize, usize), Vec<OperadPolynomial>> = BTreeMap::new();
    for r in shuffle.shuffle_relations()? {
        let (a, w) = (r.arity().unwrap(), r.weight().unwrap());
        if bound.contains(a, w) {
            seeds.entry((a, w)).or_default().push(r);
        }
    }
    let mut out: BTreeMap<(usize, usize), SpanReduction> = BTreeMap::new();
    let unsh = |i: usize, m: usize, n: usize| -> Vec<Vec<u32>> {
        match kind {
            Kind::Nonsymmetric => vec![Unshuffle::identity(i, m, n).values],
            Kind::Shuffle => enumerate_unshuffles(i, m, n).unwrap().into_iter().map(|u| u.values).collect(),
        }
    };
    for (&(a, w), monos) in &all {
        if a == 1 && w == 0 {
            continue;
        }
        let index = MonomialIndex::from_monomials(order.clone(), monos.iter().cloned());
        let mut e = Echelon::with_limit(limit);
        if let Some(s) = seeds.get(&(a, w)) {
            for r in s {
                e.insert(index.to_vec(r))?;
            }
        }
        for (g, sym) in gens.iter().enumerate() {
            if sym.weight > w || sym.arity > a {
                continue;
            }
            let src = (a + 1 - sym.arity, w - sym.weight);
            let Some(prev) = out.get(&src) else { continue };
            let rels = prev.relations.clone();
            for r in &rels {
                let ra = r.arity().unwrap();
                // generator above
                for i in 1..=sym.arity {
                    for v in unsh(i, ra, sym.arity) {
                        let mut q = OperadPolynomial::zero();
                        for (t, c) in r.terms() {
                            let (m, s) = compose_unchecked(&corollas[g], i, &v, t);
                            q.add_term(m, if s < 0 { -c.clone() } else { c.clone() });
                        }
                        e.insert(index.to_vec(&q))?;
                    }
                }
                // generator below
                for i in 1..=ra {
                    for v in unsh(i, sym.arity, ra) {
                        let mut q = OperadPolynomial::zero();
                        for (t, c) in r.terms() {
                            let (m, s) = compose_unchecked(t, i, &v, &corollas[g]);
                            q.add_term(m, if s < 0 { -c.clone() } else { c.clone() });
                        }
                        e.insert(index.to_vec(&q))?;
                    }
                }
            }
        }
        e.rref();
        let pivots = e.pivots();
        let leading: Vec<TreeMonomial> = pivots.iter().map(|&c| index.monomial(c).clone()).collect();
        let normal: Vec<TreeMonomial> = (0..index.len())
            .filter(|c| !e.has_pivot(*c))
            .map(|c| index.monomial(c).clone())
            .collect();
        let relations = e.rows_sorted().iter().map(|r| index.to_poly(r)).collect();
        out.insert(
            (a, w),
            SpanReduction {
                leading,
                normal,
                relations,
            },
        );
    }
    Ok(out)
}

/// The arity slice of the ideal (all weights within the derived bound).
pub fn span_reduce(p: &Presentation, arity: usize, limit: Option<usize>) -> Result<SpanReduction> {
    let levels = span_reduce_levels(p, arity, None, limit)?;
    let mut r = SpanReduction {
        leading: Vec::new(),
        normal: Vec::new(),
        relations: Vec::new(),
    };
    for ((a, _), s) in levels {
        if a == arity {
            r.leading.extend(s.leading);
            r.normal.extend(s.normal);
            r.relations.extend(s.relations);
        }
    }
    if arity == 1 {
        r.normal.push(TreeMonomial::unit(p.tree_kind()));
    }
    Ok(r)
}

pub fn span_dims(p: &Presentation, max_arity: usize, limit: Option<usize>) -> Result<Vec<u64>> {
    let levels = span_reduce_levels(p, max_arity, None, limit)?;
    let mut d = vec![0u64; max_arity];
    if max_arity >= 1 {
        d[0] = 1;
    }
    for ((a, _), s) in levels {
        d[a - 1] += s.normal.len() as u64;
    }
    Ok(d)
}

/// dim P(n) for n = 1..=max_arity via a Gröbner basis.
pub fn dims(p: &Presentation, max_arity: usize) -> Result<Vec<u64>> {
    let b = Bound::for_arity(p, max_arity, None)?;
    buchberger(p, b)?.dims(max_arity)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticReport {
    pub quadratic: bool,
    pub offending: Vec<(String, usize)>,
}

/// True when every basis element has exactly two vertices.
pub fn is_quadratic_up_to(g: &GroebnerData) -> QuadraticReport {
    let mut offending = Vec::new();
    for (l, b) in g.leads.iter().zip(&g.basis) {
        let n = l.node_count();
        if n != 2 {
            offending.push((b.text(g.gens(), &g.order), n));
        }
    }
    QuadraticReport {
        quadratic: offending.is_empty(),
        offending,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::opoly::{PresentationKind, SymmetricAction, WrittenPolynomial};
    use crate::tree::{left_comb, OrderSpec};

    fn one_binary(action: i8, rel: Vec<(i64, Term)>) -> Presentation {
        let b = GeneratorSymbol::new("b", 2, 0, 1).unwrap();
        Presentation::new(
            "t",
            PresentationKind::Symmetric,
            vec![b],
            vec![Some(SymmetricAction::Sign(action))],
            vec![WrittenPolynomial {
                terms: rel.into_iter().map(|(c, t)| (rat(c), t)).collect(),
            }],
            OrderSpec::rpdl(),
        )
        .unwrap()
    }

    fn n(cs: Vec<Term>) -> Term {
        Term::Node(0, cs)
    }
    fn l(x: u32) -> Term {
        Term::Leaf(x)
    }

    fn lie() -> Presentation {
        one_binary(
            -1,
            vec![
                (1, n(vec![n(vec![l(1), l(2)]), l(3)])),
                (1, n(vec![n(vec![l(2), l(3)]), l(1)])),
                (1, n(vec![n(vec![l(3), l(1)]), l(2)])),
            ],
        )
    }

    fn com() -> Presentation {
        one_binary(1, vec![(1, n(vec![n(vec![l(1), l(2)]), l(3)])), (-1, n(vec![l(1), n(vec![l(2), l(3)])]))])
    }

    #[test]
    fn lie_dims_and_left_combs() {
        let p = lie();
        let g = buchberger(&p, Bound::for_arity(&p, 6, None).unwrap()).unwrap();
        assert_eq!(g.dims(6).unwrap(), vec![1, 1, 2, 6, 24, 120]);
        assert!(is_quadratic_up_to(&g).quadratic);
        let gens = &g.presentation.gens;
        for t in g.normal_monomials(5, None).unwrap() {
            let comb = left_comb(Kind::Shuffle, gens, &[0; 4]).unwrap();
            // every normal monomial is a relabelled left comb
            assert_eq!(t.tokens().iter().filter(|x| is_node(**x)).count(), 4);
            let shape: Vec<bool> = t.tokens().iter().map(|x| is_node(*x)).collect();
            let cshape: Vec<bool> = comb.tokens().iter().map(|x| is_node(*x)).collect();
            assert_eq!(shape, cshape);
        }
    }

    #[test]
    fn com_dims() {
        let p = com();
        assert_eq!(dims(&p, 6).unwrap(), vec![1; 6]);
        assert_eq!(span_dims(&p, 5, None).unwrap(), vec![1; 5]);
    }

    #[test]
    fn lie_span_oracle() {
        let p = lie();
        assert_eq!(span_dims(&p, 5, None).unwrap(), vec![1, 1, 2, 6, 24]);
        assert_eq!(span_reduce(&p, 3, None).unwrap().normal.len(), 2);
    }

    #[test]
    fn normal_form_properties() {
        let p = lie();
        let g = buchberger(&p, Bound::for_arity(&p, 5, None).unwrap()).unwrap();
        let rel = &g.presentation.shuffle_relations().unwrap()[0];
        let b = crate::opoly::generator_poly(Kind::Shuffle, &g.presentation.gens, 0);
        for u in enumerate_unshuffles(1, 3, 2).unwrap() {
            let x = crate::opoly::substitute(&b, 1, &u, rel).unwrap();
            assert!(g.normal_form(&x).unwrap().is_zero());
        }
        for t in crate::tree::enumerate_tree_monomials(Kind::Shuffle, &g.presentation.gens, 4, None, &g.order).unwrap() {
            let x = OperadPolynomial::monomial(t, rat(1));
            let once = g.normal_form(&x).unwrap();
            assert_eq!(g.normal_form(&once).unwrap(), once);
        }
        let big = left_comb(Kind::Shuffle, &g.presentation.gens, &[0; 5]).unwrap();
        assert!(matches!(
            g.normal_form(&OperadPolynomial::monomial(big, rat(1))),
            Err(Error::NotCompleted(_))
        ));
    }

    #[test]
    fn labelings_respect_constraints() {
        // two sibling pairs: {0,1} below one node and {2} vs {3}
        let cons = vec![(vec![0, 1], vec![2]), (vec![0], vec![1])];
        let ls = labelings(3, &cons);
        assert_eq!(ls, vec![vec![1, 2, 3], vec![1, 3, 2]]);
        assert_eq!(labelings(3, &[]).len(), 6);
    }
}
