//! Truncated cobar complexes of the linear duals of finite (or truncated)
//! operads. Chains are shuffle tree monomials over the augmentation-ideal
//! basis; the differential expands one vertex into two.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, rat, Rational};
use crate::linalg::{axpy, Echelon, Solver, SparseVec};
use crate::opoly::{OperadPolynomial, Presentation};
use crate::tree::{
    compose, enumerate_unshuffles, expand_node, node_token, odd_before, GeneratorSymbol, Kind, TreeMonomial,
    Unshuffle,
};
use crate::veronese::gb_up_to;

pub type Chain = Vec<(TreeMonomial, Rational)>;

#[derive(Clone, Debug)]
pub struct CompositionEntry {
    /// (arity, index) of the outer and inner basis elements
    pub outer: (usize, usize),
    pub inner: (usize, usize),
    pub slot: usize,
    pub sigma: Vec<u32>,
    /// expansion over the basis of arity outer + inner - 1
    pub value: Vec<(usize, Rational)>,
}

#[derive(Clone, Debug)]
pub struct TruncatedOperadTables {
    pub source: String,
    pub kind: Kind,
    pub bound: usize,
    /// normal monomials per arity (arity 1 holds the unit)
    pub basis: BTreeMap<usize, Vec<TreeMonomial>>,
    pub texts: BTreeMap<usize, Vec<String>>,
    /// internal homological degree per basis element
    pub degrees: BTreeMap<usize, Vec<usize>>,
    pub compositions: Vec<CompositionEntry>,
    /// one cobar generator per augmentation-ideal basis element
    pub cobar_gens: Vec<GeneratorSymbol>,
    labels: Vec<(usize, usize)>,
    label_degree: Vec<i64>,
    boundary: Vec<Chain>,
}

/// Sums terms, dropping zeros; output sorted by tokens.
pub fn collect(terms: impl IntoIterator<Item = (TreeMonomial, Rational)>) -> Chain {
    let mut acc: HashMap<TreeMonomial, Rational> = HashMap::new();
    for (t, c) in terms {
        *acc.entry(t).or_insert_with(Rational::zero) += c;
    }
    let mut out: Chain = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|a, b| a.0.tokens().cmp(b.0.tokens()));
    out
}

fn sgn(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Materializes the operad presented by `p` up to arity `bound` from its
/// Gröbner data.
pub fn composition_tables(p: &Presentation, bound: usize) -> Result<TruncatedOperadTables> {
    if p.has_unary() {
        return Err(Error::Unsupported("cobar tables need a presentation without unary generators".into()));
    }
    if bound < 1 {
        return Err(Error::Arity("bound must be at least 1".into()));
    }
    let gb = gb_up_to(p, bound, None)?;
    let mut basis: BTreeMap<usize, Vec<TreeMonomial>> = BTreeMap::new();
    for ((a, _), v) in gb.normal_monomials_by_level(bound)? {
        basis.entry(a).or_default().extend(v);
    }
    for v in basis.values_mut() {
        v.sort_by_cached_key(|t| gb.order.key(t));
    }
    for a in 1..=bound {
        basis.entry(a).or_default();
    }
    let gens = gb.gens().to_vec();
    let texts = basis.iter().map(|(a, v)| (*a, v.iter().map(|t| t.text(&gens)).collect())).collect();
    let degrees = basis.iter().map(|(a, v)| (*a, v.iter().map(|t| t.odd_count()).collect())).collect();
    let index: HashMap<&TreeMonomial, usize> =
        basis.values().flat_map(|v| v.iter().enumerate().map(|(i, t)| (t, i))).collect();

    let mut reducer = gb.reducer();
    let mut compositions = Vec::new();
    for (&pa, outs) in basis.iter().filter(|(a, _)| **a >= 2) {
        for (&qa, ins) in basis.iter().filter(|(a, _)| **a >= 2) {
            if pa + qa - 1 > bound {
                continue;
            }
            for slot in 1..=pa {
                for sigma in enumerate_unshuffles(slot, qa, pa)? {
                    for (oi, o) in outs.iter().enumerate() {
                        for (ii, inn) in ins.iter().enumerate() {
                            let (m, s) = compose(o, slot, &sigma, inn)?;
                            let nf = reducer.reduce(&OperadPolynomial::monomial(m, rat(s as i64)))?;
                            if nf.is_zero() {
                                continue;
                            }
                            let mut value: Vec<(usize, Rational)> =
                                nf.terms().map(|(t, c)| (index[t], c.clone())).collect();
                            value.sort_by_key(|x| x.0);
                            compositions.push(CompositionEntry {
                                outer: (pa, oi),
                                inner: (qa, ii),
                                slot,
                                sigma: sigma.values.clone(),
                                value,
                            });
                        }
                    }
                }
            }
        }
    }

    let mut labels = Vec::new();
    let mut cobar_gens = Vec::new();
    let mut label_degree = Vec::new();
    let mut label_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (&a, v) in basis.iter().filter(|(a, _)| **a >= 2) {
        for (i, t) in v.iter().enumerate() {
            let id = if v.len() == 1 { format!("c{a}") } else { format!("c{a}_{}", i + 1) };
            let deg = t.odd_count() as i64 - 1;
            label_of.insert((a, i), labels.len());
            labels.push((a, i));
            label_degree.push(deg);
            cobar_gens.push(GeneratorSymbol::new(&id, a, (deg.rem_euclid(2)) as u8, t.weight().max(1))?);
        }
    }
    let kind = gb.kind();
    let corollas: Vec<TreeMonomial> =
        cobar_gens.iter().enumerate().map(|(i, g)| TreeMonomial::corolla(kind, i, g)).collect();
    let mut boundary: Vec<Vec<(TreeMonomial, Rational)>> = vec![Vec::new(); labels.len()];
    for e in &compositions {
        let (a, b) = (label_of[&e.outer], label_of[&e.inner]);
        let sigma = Unshuffle { i: e.slot, m: e.inner.0, n: e.outer.0, values: e.sigma.clone() };
        let (t, s) = compose(&corollas[a], e.slot, &sigma, &corollas[b])?;
        let twist = sgn(label_degree[a].rem_euclid(2) == 1) * rat(s as i64);
        for (c, x) in &e.value {
            let target = label_of[&(e.outer.0 + e.inner.0 - 1, *c)];
            boundary[target].push((t.clone(), x * &twist));
        }
    }
    let boundary = boundary.into_iter().map(collect).collect();
    Ok(TruncatedOperadTables {
        source: p.name.clone(),
        kind,
        bound,
        basis,
        texts,
        degrees,
        compositions,
        cobar_gens,
        labels,
        label_degree,
        boundary,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainBasis {
    pub arity: usize,
    pub degree: i64,
    #[serde(skip)]
    pub monomials: Vec<TreeMonomial>,
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct DifferentialMatrix {
    pub arity: usize,
    /// source degree; the target degree is one less
    pub degree: i64,
    pub rows: usize,
    pub cols: usize,
    /// (target row, source column, value)
    pub entries: Vec<(usize, usize, Rational)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyRanks {
    pub arity: usize,
    pub degrees: Vec<i64>,
    pub chain_dims: Vec<usize>,
    /// rank of the differential leaving each degree
    pub boundary_ranks: Vec<usize>,
    pub homology: Vec<usize>,
    pub euler_chains: i64,
    pub euler_homology: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundarySolution {
    pub solvable: bool,
    #[serde(skip)]
    pub solution: Chain,
    pub source_size: usize,
    pub support: usize,
    pub zero_coefficients: usize,
    /// true when a solution with every coefficient nonzero was found
    pub all_nonzero: bool,
    /// coordinates that vanish in every solution
    pub forced_zero: usize,
    pub note: String,
}

type Memo = HashMap<(usize, i64), Rc<Vec<Vec<u32>>>>;

impl TruncatedOperadTables {
    pub fn label_text(&self, gen: usize) -> String {
        let (a, i) = self.labels[gen];
        self.texts[&a][i].clone()
    }

    /// Chain degree of a single generator: internal degree minus one.
    pub fn generator_degree(&self, gen: usize) -> i64 {
        self.label_degree[gen]
    }

    pub fn generator_index(&self, id: &str) -> Option<usize> {
        self.cobar_gens.iter().position(|g| g.id == id)
    }

    pub fn corolla(&self, gen: usize) -> TreeMonomial {
        TreeMonomial::corolla(self.kind, gen, &self.cobar_gens[gen])
    }

    /// Differential of a generator as a chain of two-vertex trees.
    pub fn generator_boundary(&self, gen: usize) -> &Chain {
        &self.boundary[gen]
    }

    pub fn tree_degree(&self, t: &TreeMonomial) -> i64 {
        t.node_positions().iter().map(|&p| self.label_degree[t.generator_at(p).unwrap()]).sum()
    }

    pub fn text(&self, t: &TreeMonomial) -> String {
        t.text(&self.cobar_gens)
    }

    fn check_arity(&self, arity: usize) -> Result<()> {
        if arity == 0 || arity > self.bound {
            return Err(Error::NotCompleted(format!("arity {arity} is outside the table bound {}", self.bound)));
        }
        Ok(())
    }

    /// Degrees realized by trees of each arity up to `m`.
    fn achievable(&self, m: usize) -> Vec<BTreeSet<i64>> {
        let mut ach: Vec<BTreeSet<i64>> = vec![BTreeSet::new(); m + 1];
        if m >= 1 {
            ach[1].insert(0);
        }
        for s in 2..=m {
            let mut set = BTreeSet::new();
            for (g, &deg) in self.label_degree.iter().enumerate() {
                let k = self.cobar_gens[g].arity;
                if k > s {
                    continue;
                }
                // sums over ordered k-part compositions of s
                let mut parts: Vec<BTreeMap<usize, BTreeSet<i64>>> = vec![BTreeMap::new(); k + 1];
                parts[0].insert(0, [0].into());
                for j in 0..k {
                    let cur = parts[j].clone();
                    for (tot, ds) in cur {
                        for sz in 1..s {
                            if tot + sz > s || sz >= s || ach[sz].is_empty() {
                                continue;
                            }
                            let e = parts[j + 1].entry(tot + sz).or_default();
                            for d in &ds {
                                for x in &ach[sz] {
                                    e.insert(d + x);
                                }
                            }
                        }
                    }
                }
                if let Some(ds) = parts[k].get(&s) {
                    set.extend(ds.iter().map(|d| d + deg));
                }
            }
            ach[s] = set;
        }
        ach
    }

    fn trees(&self, m: usize, deg: i64, ach: &[BTreeSet<i64>], memo: &mut Memo) -> Rc<Vec<Vec<u32>>> {
        if let Some(v) = memo.get(&(m, deg)) {
            return v.clone();
        }
        let mut out: Vec<Vec<u32>> = Vec::new();
        if ach[m].contains(&deg) {
            for (g, gs) in self.cobar_gens.iter().enumerate() {
                let k = gs.arity;
                if k > m {
                    continue;
                }
                let rem = deg - self.label_degree[g];
                let tok = node_token(g, gs);
                for blocks in set_partitions(m, k) {
                    let mut options: Vec<Vec<(i64, Rc<Vec<Vec<u32>>>)>> = Vec::new();
                    for b in &blocks {
                        if b.len() == 1 {
                            options.push(vec![(0, Rc::new(vec![vec![1]]))]);
                        } else {
                            options.push(
                                ach[b.len()].iter().map(|&d| (d, self.trees(b.len(), d, ach, memo))).collect(),
                            );
                        }
                    }
                    let mut pick = vec![0usize; k];
                    self.product(&blocks, &options, 0, rem, &mut pick, tok, &mut out);
                }
            }
        }
        out.sort();
        let rc = Rc::new(out);
        memo.insert((m, deg), rc.clone());
        rc
    }

    #[allow(clippy::too_many_arguments)]
    fn product(
        &self,
        blocks: &[Vec<u32>],
        options: &[Vec<(i64, Rc<Vec<Vec<u32>>>)>],
        j: usize,
        rem: i64,
        pick: &mut Vec<usize>,
        tok: u32,
        out: &mut Vec<Vec<u32>>,
    ) {
        if j == blocks.len() {
            if rem != 0 {
                return;
            }
            let lists: Vec<&Vec<Vec<u32>>> = (0..blocks.len()).map(|b| options[b][pick[b]].1.as_ref()).collect();
            if lists.iter().any(|l| l.is_empty()) {
                return;
            }
            let mut idx = vec![0usize; lists.len()];
            loop {
                let mut toks = vec![tok];
                for (b, l) in lists.iter().enumerate() {
                    for &x in &l[idx[b]] {
                        toks.push(if crate::tree::is_node(x) { x } else { blocks[b][x as usize - 1] });
                    }
                }
                out.push(toks);
                let mut c = 0;
                loop {
                    if c == idx.len() {
                        return;
                    }
                    idx[c] += 1;
                    if idx[c] < lists[c].len() {
                        break;
                    }
                    idx[c] = 0;
                    c += 1;
                }
            }
        }
        for (o, (d, _)) in options[j].iter().enumerate() {
            pick[j] = o;
            self.product(blocks, options, j + 1, rem - d, pick, tok, out);
        }
    }

    /// All shuffle trees of the given arity and chain degree, sorted by
    /// tokens.
    pub fn chain_basis(&self, arity: usize, degree: i64) -> Result<ChainBasis> {
        self.check_arity(arity)?;
        let monomials: Vec<TreeMonomial> = if arity == 1 {
            if degree == 0 {
                vec![TreeMonomial::unit(self.kind)]
            } else {
                Vec::new()
            }
        } else {
            let ach = self.achievable(arity);
            let mut memo = Memo::new();
            self.trees(arity, degree, &ach, &mut memo)
                .iter()
                .map(|t| TreeMonomial::from_raw(self.kind, arity, t.clone()))
                .collect()
        };
        Ok(ChainBasis { arity, degree, size: monomials.len(), monomials })
    }

    /// Degrees with a nonempty chain space at this arity.
    pub fn degrees_at(&self, arity: usize) -> Result<Vec<i64>> {
        self.check_arity(arity)?;
        if arity == 1 {
            return Ok(vec![0]);
        }
        Ok(self.achievable(arity)[arity].iter().copied().collect())
    }

    /// Differential of one tree: the signed sum over its vertices of the
    /// vertex expansions.
    pub fn differential_of(&self, t: &TreeMonomial) -> Result<Chain> {
        let mut terms = Vec::new();
        for pos in t.node_positions() {
            let g = t.generator_at(pos).unwrap();
            if self.boundary[g].is_empty() {
                continue;
            }
            let pre = sgn(odd_before(t, pos) % 2 == 1);
            for (x, c) in &self.boundary[g] {
                let (u, s) = expand_node(t, pos, x)?;
                terms.push((u, c * &pre * rat(s as i64)));
            }
        }
        Ok(collect(terms))
    }

    pub fn differential_of_chain(&self, c: &[(TreeMonomial, Rational)]) -> Result<Chain> {
        let mut terms = Vec::new();
        for (t, x) in c {
            for (u, y) in self.differential_of(t)? {
                terms.push((u, y * x));
            }
        }
        Ok(collect(terms))
    }

    /// Matrix of the differential from `degree` to `degree - 1`.
    pub fn differential(&self, arity: usize, degree: i64) -> Result<DifferentialMatrix> {
        let src = self.chain_basis(arity, degree)?;
        let tgt = self.chain_basis(arity, degree - 1)?;
        let index: HashMap<&TreeMonomial, usize> = tgt.monomials.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut entries = Vec::new();
        for (j, t) in src.monomials.iter().enumerate() {
            for (u, c) in self.differential_of(t)? {
                let i = *index.get(&u).ok_or_else(|| Error::Precondition("boundary left the chain basis".into()))?;
                entries.push((i, j, c));
            }
        }
        Ok(DifferentialMatrix { arity, degree, rows: tgt.size, cols: src.size, entries })
    }

    /// True when the differential squares to zero on every tree of the
    /// slice.
    pub fn d_squared_zero(&self, arity: usize, degree: i64) -> Result<bool> {
        for t in self.chain_basis(arity, degree)?.monomials {
            if !self.differential_of_chain(&self.differential_of(&t)?)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn homology_ranks(&self, arity: usize) -> Result<HomologyRanks> {
        let degrees = self.degrees_at(arity)?;
        let mut chain_dims = Vec::new();
        let mut boundary_ranks = Vec::new();
        for &d in &degrees {
            let m = self.differential(arity, d)?;
            chain_dims.push(m.cols);
            boundary_ranks.push(matrix_rank(&m)?);
        }
        let mut homology = Vec::new();
        for i in 0..degrees.len() {
            let incoming = if i + 1 < degrees.len() && degrees[i + 1] == degrees[i] + 1 { boundary_ranks[i + 1] } else { 0 };
            homology.push(chain_dims[i] - boundary_ranks[i] - incoming);
        }
        let euler = |v: &[usize]| -> i64 {
            degrees.iter().zip(v).map(|(d, x)| if d.rem_euclid(2) == 0 { *x as i64 } else { -(*x as i64) }).sum()
        };
        Ok(HomologyRanks {
            arity,
            euler_chains: euler(&chain_dims),
            euler_homology: euler(&homology),
            degrees,
            chain_dims,
            boundary_ranks,
            homology,
        })
    }

    /// Solves d(x) = target in the slice one degree above the target. The
    /// reduced-echelon particular solution is tried first; when it has
    /// zero coefficients, random kernel shifts (seeded) look for a solution
    /// with full support.
    pub fn solve_boundary(&self, target: &[(TreeMonomial, Rational)], seed: u64) -> Result<BoundarySolution> {
        let Some((first, _)) = target.first() else {
            return Ok(BoundarySolution {
                solvable: true,
                solution: Vec::new(),
                source_size: 0,
                support: 0,
                zero_coefficients: 0,
                all_nonzero: true,
                forced_zero: 0,
                note: "zero target".into(),
            });
        };
        let arity = first.arity();
        let degree = self.tree_degree(first);
        if target.iter().any(|(t, _)| t.arity() != arity || self.tree_degree(t) != degree) {
            return Err(Error::Precondition("target is not homogeneous".into()));
        }
        let src = self.chain_basis(arity, degree + 1)?;
        let tgt = self.chain_basis(arity, degree)?;
        let index: HashMap<&TreeMonomial, usize> = tgt.monomials.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut images = Vec::with_capacity(src.size);
        for t in &src.monomials {
            let mut v: SparseVec = self.differential_of(t)?.into_iter().map(|(u, c)| (index[&u], c)).collect();
            v.sort_by_key(|x| x.0);
            images.push(v);
        }
        let mut tv: SparseVec = Vec::new();
        for (t, c) in target {
            let i = *index.get(t).ok_or_else(|| Error::Precondition("target term outside the chain basis".into()))?;
            tv.push((i, c.clone()));
        }
        tv.sort_by_key(|x| x.0);
        let solver = Solver::new(&images, crate::linalg::default_limit())?;
        let Some(x) = solver.solve(&tv) else {
            return Ok(BoundarySolution {
                solvable: false,
                solution: Vec::new(),
                source_size: src.size,
                support: 0,
                zero_coefficients: src.size,
                all_nonzero: false,
                forced_zero: 0,
                note: "target is not a boundary".into(),
            });
        };
        let support = |v: &SparseVec| v.iter().filter(|(_, c)| !c.is_zero()).count();
        let mut best = x.clone();
        let mut note = "reduced-echelon solution".to_string();
        let kernel = solver.kernel();
        let mut free = vec![false; src.size];
        for (i, c) in x.iter().chain(kernel.iter().flatten()) {
            if !c.is_zero() {
                free[*i] = true;
            }
        }
        let forced_zero = free.iter().filter(|f| !**f).count();
        if support(&best) < src.size {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..32 {
                if kernel.is_empty() {
                    break;
                }
                let mut y = x.clone();
                for k in &kernel {
                    let mag = rng.gen_range(1i64..=1000);
                    let c = rat(if rng.gen_bool(0.5) { mag } else { -mag });
                    y = axpy(&y, &c, k);
                }
                if support(&y) > support(&best) {
                    best = y;
                    note = "reduced-echelon solution shifted by a random kernel element".into();
                }
                if support(&best) == src.size {
                    break;
                }
            }
            if support(&best) < src.size {
                note.push_str("; nonzero-coefficient witness not found");
            }
            if forced_zero > 0 {
                note.push_str(&format!("; {forced_zero} coefficients vanish in every solution"));
            }
        }
        let s = support(&best);
        let solution = collect(best.into_iter().map(|(i, c)| (src.monomials[i].clone(), c)));
        Ok(BoundarySolution {
            solvable: true,
            solution,
            source_size: src.size,
            support: s,
            zero_coefficients: src.size - s,
            all_nonzero: s == src.size,
            forced_zero,
            note,
        })
    }
}

fn matrix_rank(m: &DifferentialMatrix) -> Result<usize> {
    let mut cols: Vec<SparseVec> = vec![Vec::new(); m.cols];
    for (i, j, c) in &m.entries {
        cols[*j].push((*i, c.clone()));
    }
    let mut e = Echelon::with_limit(crate::linalg::default_limit());
    for mut c in cols {
        c.sort_by_key(|x| x.0);
        e.insert(c)?;
    }
    Ok(e.rank())
}

/// Set partitions of {1..m} into exactly k blocks, blocks ordered by their
/// minima.
fn set_partitions(m: usize, k: usize) -> Vec<Vec<Vec<u32>>> {
    fn rec(x: u32, m: u32, k: usize, cur: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if x > m {
            if cur.len() == k {
                out.push(cur.clone());
            }
            return;
        }
        // not enough elements left to open the missing blocks
        if (m - x + 1) < (k - cur.len().min(k)) as u32 {
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(x);
            rec(x + 1, m, k, cur, out);
            cur[b].pop();
        }
        if cur.len() < k {
            cur.push(vec![x]);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, m as u32, k, &mut Vec::new(), &mut out);
    out
}

/// Every shuffle tree obtained by composing `gen` into the first slot of
/// itself `copies - 1` times.
pub fn left_combs(tables: &TruncatedOperadTables, gen: usize, copies: usize) -> Result<Vec<TreeMonomial>> {
    if copies == 0 {
        return Ok(vec![TreeMonomial::unit(tables.kind)]);
    }
    let c = tables.corolla(gen);
    let mut cur = vec![c.clone()];
    for _ in 1..copies {
        let mut next = Vec::new();
        for t in &cur {
            for sigma in enumerate_unshuffles(1, t.arity(), c.arity())? {
                next.push(compose(&c, 1, &sigma, t)?.0);
            }
        }
        cur = next;
    }
    cur.sort_by(|a, b| a.tokens().cmp(b.tokens()));
    cur.dedup();
    Ok(cur)
}

/// sum over first-slot shuffles of outer o_(1,sigma) inner, extended
/// bilinearly.
pub fn first_slot_sum(outer: &[(TreeMonomial, Rational)], inner: &[(TreeMonomial, Rational)]) -> Result<Chain> {
    let mut terms = Vec::new();
    for (o, x) in outer {
        for (i, y) in inner {
            for sigma in enumerate_unshuffles(1, i.arity(), o.arity())? {
                let (t, s) = compose(o, 1, &sigma, i)?;
                terms.push((t, x * y * rat(s as i64)));
            }
        }
    }
    Ok(collect(terms))
}

#[derive(Clone, Debug, Serialize)]
pub struct PureCycleReport {
    pub n: usize,
    pub source: String,
    pub boundary_arity: usize,
    pub cycle_arity: usize,
    pub left_combs: usize,
    pub boundary: BoundarySolution,
    pub d_squared_zero: bool,
    pub alpha_terms: usize,
    pub beta_terms: usize,
    pub cycle_terms: usize,
    pub cycle_closed: bool,
    pub image_rank: usize,
    pub augmented_rank: usize,
    pub not_a_boundary: bool,
    pub omega: String,
    pub omega_in_alpha: String,
    pub omega_in_beta: String,
    pub verdict: String,
}

fn coeff(c: &[(TreeMonomial, Rational)], t: &TreeMonomial) -> Rational {
    c.iter().find(|(u, _)| u == t).map(|(_, x)| x.clone()).unwrap_or_else(Rational::zero)
}

/// The non-bounding cycle alpha_n - beta_n in the cobar complex of the
/// dual of tCom^n_1, for n = 2, 3.
pub fn pure_cycle_report(n: usize, seed: u64) -> Result<PureCycleReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!("pure_cycle_report supports n = 2, 3 (got {n})")));
    }
    let p = crate::presets::preset(&format!("tcom:{n}:1"))?;
    let cycle_arity = n * n + n - 1;
    let tables = composition_tables(&p, cycle_arity)?;
    let l = tables
        .cobar_gens
        .iter()
        .position(|g| g.arity == n)
        .ok_or_else(|| Error::Precondition("no arity-n generator".into()))?;
    let xi = tables
        .cobar_gens
        .iter()
        .position(|g| g.arity == 2 * n - 1)
        .ok_or_else(|| Error::Precondition("no arity 2n-1 generator".into()))?;

    let combs = left_combs(&tables, l, n + 1)?;
    let scale = Rational::from_integer(factorial(n as u64));
    let target: Chain = combs.iter().map(|t| (t.clone(), scale.clone())).collect();
    let boundary = tables.solve_boundary(&target, seed)?;
    let nu = boundary.solution.clone();

    let lc = vec![(tables.corolla(l), Rational::one())];
    let alpha = first_slot_sum(&lc, &nu)?;
    let beta = first_slot_sum(&nu, &lc)?;
    let cycle = collect(
        alpha.iter().cloned().chain(beta.iter().map(|(t, c)| (t.clone(), -c.clone()))),
    );
    let cycle_closed = tables.differential_of_chain(&cycle)?.is_empty();

    // image of the degree-2 differential, indexed lazily
    let mut index: HashMap<TreeMonomial, usize> = HashMap::new();
    let idx = |t: TreeMonomial, index: &mut HashMap<TreeMonomial, usize>| {
        let k = index.len();
        *index.entry(t).or_insert(k)
    };
    let mut e = Echelon::with_limit(crate::linalg::default_limit());
    let mut d2 = true;
    for t in tables.chain_basis(cycle_arity, 2)?.monomials {
        let img = tables.differential_of(&t)?;
        if d2 && !tables.differential_of_chain(&img)?.is_empty() {
            d2 = false;
        }
        let mut v: SparseVec = img.into_iter().map(|(u, c)| (idx(u, &mut index), c)).collect();
        v.sort_by_key(|x| x.0);
        e.insert(v)?;
    }
    let image_rank = e.rank();
    let mut cv: SparseVec = cycle.iter().map(|(u, c)| (idx(u.clone(), &mut index), c.clone())).collect();
    cv.sort_by_key(|x| x.0);
    e.insert(cv)?;
    let augmented_rank = e.rank();
    for t in tables.chain_basis(n * n, 2)?.monomials {
        if !tables.differential_of_chain(&tables.differential_of(&t)?)?.is_empty() {
            d2 = false;
        }
    }

    // omega = l o_1 gamma(xi; id, .., id, l, .., l), last slot first
    let mut g = tables.corolla(xi);
    for slot in (n + 1..=2 * n - 1).rev() {
        let sigma = Unshuffle::identity(slot, n, g.arity());
        g = compose(&g, slot, &sigma, &tables.corolla(l))?.0;
    }
    let omega = compose(&tables.corolla(l), 1, &Unshuffle::identity(1, g.arity(), n), &g)?.0;
    let omega_in_alpha = coeff(&alpha, &omega);
    let omega_in_beta = coeff(&beta, &omega);
    let not_a_boundary = !cycle.is_empty() && augmented_rank > image_rank;
    let verdict = if boundary.solvable && cycle_closed && not_a_boundary && d2 {
        "alpha - beta is a nonzero homology class in degree 1"
    } else {
        "cycle certificate incomplete"
    };
    Ok(PureCycleReport {
        n,
        source: p.name.clone(),
        boundary_arity: n * n,
        cycle_arity,
        left_combs: combs.len(),
        boundary,
        d_squared_zero: d2,
        alpha_terms: alpha.len(),
        beta_terms: beta.len(),
        cycle_terms: cycle.len(),
        cycle_closed,
        image_rank,
        augmented_rank,
        not_a_boundary,
        omega: tables.text(&omega),
        omega_in_alpha: omega_in_alpha.to_string(),
        omega_in_beta: omega_in_beta.to_string(),
        verdict: verdict.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;

    fn tables(name: &str, bound: usize) -> TruncatedOperadTables {
        composition_tables(&preset(name).unwrap(), bound).unwrap()
    }

    fn sizes(t: &TruncatedOperadTables) -> Vec<usize> {
        (1..=t.bound).map(|a| t.basis[&a].len()).collect()
    }

    #[test]
    fn table_sizes() {
        assert_eq!(sizes(&tables("tcom:2:1", 3)), vec![1, 1, 1]);
        assert_eq!(sizes(&tables("tcom:3:1", 5)), vec![1, 0, 1, 0, 1]);
        assert_eq!(sizes(&tables("com", 4)), vec![1, 1, 1, 1]);
    }

    #[test]
    fn chain_bases() {
        let t = tables("tcom:2:1", 5);
        let b = t.chain_basis(4, 1).unwrap();
        for m in &b.monomials {
            let mut ar: Vec<usize> = m.node_positions().iter().map(|&p| t.cobar_gens[m.generator_at(p).unwrap()].arity).collect();
            ar.sort();
            assert_eq!(ar, vec![2, 3]);
        }
        let l = t.generator_index("c2").unwrap();
        let combs = left_combs(&t, l, 3).unwrap();
        assert_eq!(combs.len(), 6);
        let deg0 = t.chain_basis(4, 0).unwrap().monomials;
        assert!(combs.iter().all(|c| deg0.contains(c)));
        assert_eq!(t.chain_basis(4, 2).unwrap().size, 0);
        assert!(t.chain_basis(6, 0).is_err());
    }

    #[test]
    fn d_squared_and_homology() {
        for (name, bound) in [("com", 5), ("ass", 4), ("lie", 5), ("tcom:2:1", 5)] {
            let t = tables(name, bound);
            for a in 1..=bound {
                for d in t.degrees_at(a).unwrap() {
                    assert!(t.d_squared_zero(a, d).unwrap(), "{name} {a} {d}");
                }
                let h = t.homology_ranks(a).unwrap();
                assert_eq!(h.euler_chains, h.euler_homology);
            }
        }
        let com = tables("com", 4);
        let h = com.homology_ranks(3).unwrap();
        assert_eq!((h.degrees.clone(), h.homology.clone()), (vec![-2, -1], vec![2, 0]));
        let h = com.homology_ranks(1).unwrap();
        assert_eq!(h.homology, vec![1]);
        let h = tables("tcom:2:1", 5).homology_ranks(5).unwrap();
        let i = h.degrees.iter().position(|&d| d == 1).unwrap();
        assert!(h.homology[i] > 0);
    }

    #[test]
    fn empty_differential() {
        let t = tables("tcom:3:1", 5);
        let m = t.differential(4, 0).unwrap();
        assert_eq!((m.rows, m.cols, m.entries.len()), (0, 0, 0));
        let s = t.solve_boundary(&[], 1).unwrap();
        assert!(s.solvable && s.solution.is_empty());
    }

    #[test]
    fn pure_cycle_binary() {
        let r = pure_cycle_report(2, 1).unwrap();
        assert!(r.boundary.solvable);
        assert!(r.cycle_closed && r.not_a_boundary && r.d_squared_zero);
        assert_eq!(r.left_combs, 6);
        assert_eq!(r.omega_in_beta, "0");
        assert_ne!(r.omega_in_alpha, "0");
        assert!(pure_cycle_report(4, 1).is_err());
    }
}
