//! Operadic polynomials, presentations, and the passage from symmetric
//! input to shuffle relations.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::linalg::{Echelon, SparseVec};
use crate::tree::{
    compose, is_node, orientation_sign, tok_arity, GeneratorSymbol, Kind, MonomialOrder, OrderSpec, Term,
    TreeMonomial, Unshuffle,
};

/// Linear combination of tree monomials with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OperadPolynomial {
    terms: BTreeMap<TreeMonomial, Rational>,
}

impl OperadPolynomial {
    pub fn zero() -> Self {
        OperadPolynomial::default()
    }

    pub fn monomial(t: TreeMonomial, c: Rational) -> Self {
        let mut p = OperadPolynomial::zero();
        p.add_term(t, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: TreeMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &OperadPolynomial, c: &Rational) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> OperadPolynomial {
        let mut p = OperadPolynomial::zero();
        p.add_scaled(self, c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TreeMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &TreeMonomial) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn arity(&self) -> Option<usize> {
        self.terms.keys().next().map(|t| t.arity())
    }

    pub fn weight(&self) -> Option<usize> {
        self.terms.keys().next().map(|t| t.weight())
    }

    /// Terms sorted descending under the order, leading term first.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(TreeMonomial, Rational)> {
        let mut v: Vec<(TreeMonomial, Rational)> = self.terms.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        v.sort_by_cached_key(|(t, _)| std::cmp::Reverse(order.key(t)));
        v
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(TreeMonomial, Rational)> {
        self.terms
            .iter()
            .max_by_key(|(t, _)| order.key(t))
            .map(|(t, c)| (t.clone(), c.clone()))
    }

    pub fn monic(&self, order: &MonomialOrder) -> OperadPolynomial {
        match self.leading(order) {
            Some((_, c)) => self.scaled(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn text(&self, gens: &[GeneratorSymbol], order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        format_combination(self.sorted_terms(order).iter().map(|(t, c)| (c.clone(), t.text(gens))))
    }

    pub fn check_homogeneous(&self) -> Result<()> {
        let mut it = self.terms.keys();
        if let Some(first) = it.next() {
            for t in it {
                if t.arity() != first.arity() {
                    return Err(Error::Inhomogeneous("terms of different arities".into()));
                }
                if t.weight() != first.weight() {
                    return Err(Error::Inhomogeneous("terms of different weights".into()));
                }
                if t.parity() != first.parity() {
                    return Err(Error::Inhomogeneous("terms of different parities".into()));
                }
            }
        }
        Ok(())
    }
}

/// "c * m + c * m - ..." with explicit unit coefficients.
pub fn format_combination(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut s = String::new();
    for (k, (c, m)) in terms.enumerate() {
        let neg = c < Rational::zero();
        let a = if neg { -c } else { c };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&format_rational(&a));
        s.push_str(" * ");
        s.push_str(&m);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Bilinear extension of signed monomial composition.
pub fn substitute(outer: &OperadPolynomial, i: usize, sigma: &Unshuffle, inner: &OperadPolynomial) -> Result<OperadPolynomial> {
    let mut out = OperadPolynomial::zero();
    for (a, x) in outer.terms() {
        for (b, y) in inner.terms() {
            let (t, s) = compose(a, i, sigma, b)?;
            let c = x * y;
            out.add_term(t, if s < 0 { -c } else { c });
        }
    }
    Ok(out)
}

/// Monomial action of the transpositions (j, j+1) on a generator basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SymmetricAction {
    /// g . s_j = sign * g for every j
    Sign(i8),
    /// g . s_j = sign * other generator, one entry per j = 1..arity-1
    Table(Vec<(usize, i8)>),
}

impl SymmetricAction {
    pub fn apply(&self, gen: usize, j: usize) -> (usize, i8) {
        match self {
            SymmetricAction::Sign(s) => (gen, *s),
            SymmetricAction::Table(t) => t[j - 1],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PresentationKind {
    Shuffle,
    Nonsymmetric,
    Symmetric,
}

impl PresentationKind {
    pub fn tree_kind(self) -> Kind {
        match self {
            PresentationKind::Nonsymmetric => Kind::Nonsymmetric,
            _ => Kind::Shuffle,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PresentationKind::Shuffle => "shuffle",
            PresentationKind::Nonsymmetric => "nonsymmetric",
            PresentationKind::Symmetric => "symmetric",
        }
    }
}

/// A relation as written: a combination of terms whose leaves need not be
/// in shuffle position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrittenPolynomial {
    pub terms: Vec<(Rational, Term)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub kind: PresentationKind,
    pub gens: Vec<GeneratorSymbol>,
    pub actions: Vec<Option<SymmetricAction>>,
    pub relations: Vec<WrittenPolynomial>,
    pub order: OrderSpec,
}

impl Presentation {
    pub fn new(
        name: &str,
        kind: PresentationKind,
        gens: Vec<GeneratorSymbol>,
        actions: Vec<Option<SymmetricAction>>,
        relations: Vec<WrittenPolynomial>,
        order: OrderSpec,
    ) -> Result<Self> {
        let p = Presentation {
            name: name.to_string(),
            kind,
            gens,
            actions,
            relations,
            order,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn tree_kind(&self) -> Kind {
        self.kind.tree_kind()
    }

    pub fn monomial_order(&self) -> MonomialOrder {
        MonomialOrder::new(self.order, self.gens.len())
    }

    pub fn generator_index(&self, id: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.id == id)
    }

    pub fn has_unary(&self) -> bool {
        self.gens.iter().any(|g| g.arity == 1)
    }

    fn validate(&self) -> Result<()> {
        for (i, g) in self.gens.iter().enumerate() {
            if self.gens[..i].iter().any(|h| h.id == g.id) {
                return Err(Error::Precondition(format!("duplicate generator `{}`", g.id)));
            }
        }
        if self.actions.len() != self.gens.len() {
            return Err(Error::InvalidAction("one action slot per generator expected".into()));
        }
        match self.kind {
            PresentationKind::Symmetric => {
                for (i, a) in self.actions.iter().enumerate() {
                    if a.is_none() {
                        return Err(Error::InvalidAction(format!("generator `{}` has no action", self.gens[i].id)));
                    }
                }
                self.check_actions()?;
            }
            _ => {
                if self.actions.iter().any(|a| a.is_some()) {
                    return Err(Error::InvalidAction("actions are only allowed on symmetric presentations".into()));
                }
            }
        }
        for r in &self.relations {
            self.check_written(r)?;
        }
        Ok(())
    }

    fn check_actions(&self) -> Result<()> {
        for (g, a) in self.actions.iter().enumerate() {
            let sym = &self.gens[g];
            match a {
                Some(SymmetricAction::Sign(s)) if *s == 1 || *s == -1 => {}
                Some(SymmetricAction::Sign(_)) => return Err(Error::InvalidAction("sign must be +1 or -1".into())),
                Some(SymmetricAction::Table(t)) => {
                    if t.len() + 1 != sym.arity.max(1) {
                        return Err(Error::InvalidAction(format!(
                            "generator `{}` needs {} table entries",
                            sym.id,
                            sym.arity - 1
                        )));
                    }
                    for &(h, s) in t {
                        let other = self
                            .gens
                            .get(h)
                            .ok_or_else(|| Error::InvalidAction("table refers to an unknown generator".into()))?;
                        if other.arity != sym.arity || other.parity != sym.parity || other.weight != sym.weight {
                            return Err(Error::InvalidAction(format!(
                                "`{}` and `{}` differ in arity, degree or weight",
                                sym.id, other.id
                            )));
                        }
                        if s != 1 && s != -1 {
                            return Err(Error::InvalidAction("table signs must be +1 or -1".into()));
                        }
                    }
                }
                None => {}
            }
        }
        // Coxeter relations on each generator
        let act = |g: usize, j: usize| self.actions[g].as_ref().unwrap().apply(g, j);
        let word = |g: usize, w: &[usize]| {
            let mut cur = (g, 1i8);
            for &j in w {
                let (h, s) = act(cur.0, j);
                cur = (h, cur.1 * s);
            }
            cur
        };
        for g in 0..self.gens.len() {
            let n = self.gens[g].arity;
            for j in 1..n {
                if word(g, &[j, j]) != (g, 1) {
                    return Err(Error::InvalidAction(format!("s{j} is not an involution on `{}`", self.gens[g].id)));
                }
                if j + 1 < n && word(g, &[j, j + 1, j]) != word(g, &[j + 1, j, j + 1]) {
                    return Err(Error::InvalidAction(format!("braid relation fails on `{}`", self.gens[g].id)));
                }
                for k in j + 2..n {
                    if word(g, &[j, k]) != word(g, &[k, j]) {
                        return Err(Error::InvalidAction(format!("s{j} and s{k} do not commute on `{}`", self.gens[g].id)));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_written(&self, r: &WrittenPolynomial) -> Result<()> {
        let mut shape: Option<(usize, usize, u8)> = None;
        for (_, t) in &r.terms {
            let mut toks = Vec::new();
            t.push_tokens(&self.gens, &mut toks)?;
            let mut labels = t.leaves();
            let n = labels.len();
            labels.sort_unstable();
            if labels.iter().enumerate().any(|(i, &l)| l as usize != i + 1) {
                return Err(Error::Parse(format!("leaf labels must be a permutation of 1..{n}")));
            }
            let w: usize = toks.iter().filter(|x| is_node(**x)).map(|x| crate::tree::tok_weight(*x)).sum();
            let p = toks
                .iter()
                .filter(|x| is_node(**x) && crate::tree::tok_parity(**x) == 1)
                .count() as u8
                % 2;
            match shape {
                None => shape = Some((n, w, p)),
                Some((a, b, c)) => {
                    if a != n {
                        return Err(Error::Inhomogeneous(format!("arities {a} and {n} are mixed")));
                    }
                    if b != w {
                        return Err(Error::Inhomogeneous(format!("weights {b} and {w} are mixed")));
                    }
                    if c != p {
                        return Err(Error::Inhomogeneous("parities are mixed".into()));
                    }
                }
            }
            if self.kind != PresentationKind::Symmetric {
                TreeMonomial::from_tokens(self.tree_kind(), toks)?;
            }
        }
        Ok(())
    }

    /// Shuffle (or planar) canonical form of a written term.
    pub fn canonicalize(&self, t: &Term) -> Result<(i8, TreeMonomial)> {
        let acts = (self.kind == PresentationKind::Symmetric).then_some(self.actions.as_slice());
        canonicalize(self.tree_kind(), t, &self.gens, acts)
    }

    pub fn written_to_poly(&self, r: &WrittenPolynomial) -> Result<OperadPolynomial> {
        let mut p = OperadPolynomial::zero();
        for (c, t) in &r.terms {
            let (s, m) = self.canonicalize(t)?;
            p.add_term(m, if s < 0 { -c.clone() } else { c.clone() });
        }
        Ok(p)
    }

    /// Relations as shuffle (or planar) polynomials spanning the same ideal,
    /// in reduced echelon form per arity.
    pub fn shuffle_relations(&self) -> Result<Vec<OperadPolynomial>> {
        let order = self.monomial_order();
        let mut by_arity: BTreeMap<usize, Vec<OperadPolynomial>> = BTreeMap::new();
        for r in &self.relations {
            let Some((_, first)) = r.terms.first() else { continue };
            let n = first.leaves().len();
            let entry = by_arity.entry(n).or_default();
            if self.kind == PresentationKind::Symmetric {
                for perm in permutations(n) {
                    let w = WrittenPolynomial {
                        terms: r
                            .terms
                            .iter()
                            .map(|(c, t)| (c.clone(), t.relabel(&|l| perm[l as usize - 1])))
                            .collect(),
                    };
                    entry.push(self.written_to_poly(&w)?);
                }
            } else {
                entry.push(self.written_to_poly(r)?);
            }
        }
        let mut out = Vec::new();
        for (_, polys) in by_arity {
            out.extend(echelon_polys(&polys, &order)?);
        }
        Ok(out)
    }

    /// The shuffle presentation with the same ideal.
    pub fn to_shuffle(&self) -> Result<Presentation> {
        if self.kind != PresentationKind::Symmetric {
            return Ok(self.clone());
        }
        let order = self.monomial_order();
        let relations = self
            .shuffle_relations()?
            .iter()
            .map(|p| WrittenPolynomial {
                terms: p.sorted_terms(&order).into_iter().map(|(t, c)| (c, t.to_term())).collect(),
            })
            .collect();
        Presentation::new(
            &self.name,
            PresentationKind::Shuffle,
            self.gens.clone(),
            vec![None; self.gens.len()],
            relations,
            self.order,
        )
    }
}

pub fn symmetric_to_shuffle(p: &Presentation) -> Result<Presentation> {
    p.to_shuffle()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    fn rec(k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

/// Basis of the span of the given polynomials, reduced echelon form,
/// sorted by leading monomial.
pub fn echelon_polys(polys: &[OperadPolynomial], order: &MonomialOrder) -> Result<Vec<OperadPolynomial>> {
    let mut index = MonomialIndex::new(order.clone());
    for p in polys {
        for (t, _) in p.terms() {
            index.add(t);
        }
    }
    index.finish();
    let mut e = Echelon::new();
    for p in polys {
        e.insert(index.to_vec(p))?;
    }
    e.rref();
    Ok(e.rows_sorted().iter().map(|r| index.to_poly(r)).collect())
}

/// Column indexing of monomials in ascending order, so that the pivot of a
/// sparse row is the leading monomial.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    order: MonomialOrder,
    pending: Vec<TreeMonomial>,
    cols: Vec<TreeMonomial>,
    pos: HashMap<TreeMonomial, usize>,
}

impl MonomialIndex {
    pub fn new(order: MonomialOrder) -> Self {
        MonomialIndex {
            order,
            pending: Vec::new(),
            cols: Vec::new(),
            pos: HashMap::new(),
        }
    }

    pub fn from_monomials(order: MonomialOrder, ms: impl IntoIterator<Item = TreeMonomial>) -> Self {
        let mut ix = MonomialIndex::new(order);
        for m in ms {
            ix.add(&m);
        }
        ix.finish();
        ix
    }

    pub fn add(&mut self, t: &TreeMonomial) {
        if !self.pos.contains_key(t) {
            self.pos.insert(t.clone(), usize::MAX);
            self.pending.push(t.clone());
        }
    }

    pub fn finish(&mut self) {
        let mut all: Vec<TreeMonomial> = std::mem::take(&mut self.cols);
        all.append(&mut self.pending);
        all.sort_by_cached_key(|t| self.order.key(t));
        for (i, t) in all.iter().enumerate() {
            self.pos.insert(t.clone(), i);
        }
        self.cols = all;
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn column(&self, t: &TreeMonomial) -> Option<usize> {
        self.pos.get(t).copied().filter(|&c| c != usize::MAX)
    }

    pub fn monomial(&self, c: usize) -> &TreeMonomial {
        &self.cols[c]
    }

    pub fn monomials(&self) -> &[TreeMonomial] {
        &self.cols
    }

    pub fn to_vec(&self, p: &OperadPolynomial) -> SparseVec {
        let mut v: SparseVec = p.terms().map(|(t, c)| (self.pos[t], c.clone())).collect();
        v.sort_by_key(|x| x.0);
        v
    }

    pub fn to_poly(&self, v: &SparseVec) -> OperadPolynomial {
        let mut p = OperadPolynomial::zero();
        for (c, x) in v {
            p.add_term(self.cols[*c].clone(), x.clone());
        }
        p
    }
}

/// Sorts children at every node using the actions (when given) and the
/// Koszul sign of swapping adjacent subtrees. Without actions the term must
/// already be canonical.
pub fn canonicalize(
    kind: Kind,
    t: &Term,
    gens: &[GeneratorSymbol],
    actions: Option<&[Option<SymmetricAction>]>,
) -> Result<(i8, TreeMonomial)> {
    fn go(
        kind: Kind,
        t: &Term,
        gens: &[GeneratorSymbol],
        actions: Option<&[Option<SymmetricAction>]>,
    ) -> Result<(i8, Term, u32, u8)> {
        match t {
            Term::Leaf(l) => Ok((1, Term::Leaf(*l), *l, 0)),
            Term::Node(g, cs) => {
                let mut sign = 1i8;
                let mut kids = Vec::with_capacity(cs.len());
                let mut parity = gens.get(*g).map(|s| s.parity).unwrap_or(0);
                for c in cs {
                    let (s, ct, m, p) = go(kind, c, gens, actions)?;
                    sign *= s;
                    parity ^= p;
                    kids.push((ct, m, p));
                }
                let mut g = *g;
                if kind == Kind::Shuffle {
                    let k = kids.len();
                    for pass in 0..k {
                        for j in 0..k.saturating_sub(1 + pass) {
                            if kids[j].1 > kids[j + 1].1 {
                                let act = actions
                                    .and_then(|a| a.get(g).and_then(|x| x.as_ref()))
                                    .ok_or_else(|| Error::Parse("term is not in shuffle form".into()))?;
                                let (h, s) = act.apply(g, j + 1);
                                let koszul = if kids[j].2 & kids[j + 1].2 == 1 { -1 } else { 1 };
                                sign *= s * koszul;
                                g = h;
                                kids.swap(j, j + 1);
                            }
                        }
                    }
                }
                let m = kids.iter().map(|k| k.1).min().unwrap_or(u32::MAX);
                Ok((sign, Term::Node(g, kids.into_iter().map(|k| k.0).collect()), m, parity))
            }
        }
    }
    let (s, term, _, _) = go(kind, t, gens, actions)?;
    let m = TreeMonomial::from_term(kind, &term, gens)?;
    Ok((s, m))
}

/// Operad morphism given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct Morphism<'a> {
    pub images: &'a [OperadPolynomial],
    pub kind: Kind,
    pub target_gens: &'a [GeneratorSymbol],
    pub target_actions: Option<&'a [Option<SymmetricAction>]>,
}

type Tagged = (Rational, Vec<(u32, u32)>);

impl Morphism<'_> {
    /// Image of a written term over the source generators. The orientation of
    /// a grafted image lists the image of the root, then the images of the
    /// children in order.
    pub fn apply(&self, t: &Term) -> Result<OperadPolynomial> {
        let parts = self.expand(t)?;
        let mut out = OperadPolynomial::zero();
        for (c, toks) in parts {
            let raw: Vec<u32> = toks.iter().map(|x| x.0).collect();
            let tags: Vec<u32> = toks.iter().map(|x| x.1).collect();
            let s1 = orientation_sign(&raw, &tags);
            let term = tokens_to_term(&raw);
            let (s2, m) = canonicalize(self.kind, &term, self.target_gens, self.target_actions)?;
            out.add_term(m, if s1 * s2 < 0 { -c } else { c });
        }
        Ok(out)
    }

    pub fn apply_poly(&self, p: &OperadPolynomial) -> Result<OperadPolynomial> {
        let mut out = OperadPolynomial::zero();
        for (t, c) in p.terms() {
            out.add_scaled(&self.apply(&t.to_term())?, c);
        }
        Ok(out)
    }

    pub fn apply_written(&self, w: &WrittenPolynomial) -> Result<OperadPolynomial> {
        let mut out = OperadPolynomial::zero();
        for (c, t) in &w.terms {
            out.add_scaled(&self.apply(t)?, c);
        }
        Ok(out)
    }

    fn expand(&self, t: &Term) -> Result<Vec<Tagged>> {
        match t {
            Term::Leaf(l) => Ok(vec![(Rational::one(), vec![(*l, 0)])]),
            Term::Node(g, cs) => {
                let img = self
                    .images
                    .get(*g)
                    .ok_or_else(|| Error::UnknownGenerator(format!("#{g}")))?;
                let kids: Vec<Vec<Tagged>> = cs.iter().map(|c| self.expand(c)).collect::<Result<_>>()?;
                let mut out = Vec::new();
                for (m, c) in img.terms() {
                    if m.arity() != cs.len() {
                        return Err(Error::Arity("image arity differs from generator arity".into()));
                    }
                    // cartesian product over children choices
                    let mut idx = vec![0usize; kids.len()];
                    if kids.iter().any(|k| k.is_empty()) {
                        continue;
                    }
                    loop {
                        let mut coef = c.clone();
                        for (k, &i) in idx.iter().enumerate() {
                            coef *= &kids[k][i].0;
                        }
                        let base = m.node_count() as u32;
                        let mut offsets = Vec::with_capacity(kids.len());
                        let mut acc = base;
                        for (k, &i) in idx.iter().enumerate() {
                            offsets.push(acc);
                            acc += kids[k][i].1.iter().filter(|x| is_node(x.0)).count() as u32;
                        }
                        let mut toks = Vec::new();
                        let mut r = 0u32;
                        for &x in m.tokens() {
                            if is_node(x) {
                                toks.push((x, r));
                                r += 1;
                            } else {
                                let k = x as usize - 1;
                                for &(y, tag) in &kids[k][idx[k]].1 {
                                    toks.push((y, if is_node(y) { tag + offsets[k] } else { 0 }));
                                }
                            }
                        }
                        out.push((coef, toks));
                        // advance
                        let mut k = 0;
                        while k < idx.len() {
                            idx[k] += 1;
                            if idx[k] < kids[k].len() {
                                break;
                            }
                            idx[k] = 0;
                            k += 1;
                        }
                        if k == idx.len() {
                            break;
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

pub(crate) fn tokens_to_term(toks: &[u32]) -> Term {
    fn go(toks: &[u32], pos: usize) -> (Term, usize) {
        let t = toks[pos];
        if !is_node(t) {
            return (Term::Leaf(t), pos + 1);
        }
        let mut p = pos + 1;
        let mut cs = Vec::with_capacity(tok_arity(t));
        for _ in 0..tok_arity(t) {
            let (c, q) = go(toks, p);
            cs.push(c);
            p = q;
        }
        (Term::Node(crate::tree::tok_gen(t), cs), p)
    }
    go(toks, 0).0
}

/// The corolla of a generator as a one-term polynomial.
pub fn generator_poly(kind: Kind, gens: &[GeneratorSymbol], g: usize) -> OperadPolynomial {
    OperadPolynomial::monomial(TreeMonomial::corolla(kind, g, &gens[g]), Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::tree::enumerate_unshuffles;

    fn lie() -> Presentation {
        let b = GeneratorSymbol::new("b", 2, 0, 1).unwrap();
        let n = |g, cs| Term::Node(g, cs);
        let l = Term::Leaf;
        let jac = WrittenPolynomial {
            terms: vec![
                (rat(1), n(0, vec![n(0, vec![l(1), l(2)]), l(3)])),
                (rat(1), n(0, vec![n(0, vec![l(2), l(3)]), l(1)])),
                (rat(1), n(0, vec![n(0, vec![l(3), l(1)]), l(2)])),
            ],
        };
        Presentation::new(
            "lie",
            PresentationKind::Symmetric,
            vec![b],
            vec![Some(SymmetricAction::Sign(-1))],
            vec![jac],
            OrderSpec::rpdl(),
        )
        .unwrap()
    }

    #[test]
    fn lie_relation_space() {
        let p = lie();
        let rels = p.shuffle_relations().unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].len(), 3);
    }

    #[test]
    fn com_relation_space() {
        let b = GeneratorSymbol::new("b", 2, 0, 1).unwrap();
        let n = |g, cs| Term::Node(g, cs);
        let l = Term::Leaf;
        let assoc = WrittenPolynomial {
            terms: vec![
                (rat(1), n(0, vec![n(0, vec![l(1), l(2)]), l(3)])),
                (rat(-1), n(0, vec![l(1), n(0, vec![l(2), l(3)])])),
            ],
        };
        let p = Presentation::new(
            "com",
            PresentationKind::Symmetric,
            vec![b],
            vec![Some(SymmetricAction::Sign(1))],
            vec![assoc],
            OrderSpec::rpdl(),
        )
        .unwrap();
        assert_eq!(p.shuffle_relations().unwrap().len(), 2);
        let s = p.to_shuffle().unwrap();
        assert_eq!(s.kind, PresentationKind::Shuffle);
        assert_eq!(s.shuffle_relations().unwrap().len(), 2);
    }

    #[test]
    fn bad_actions_are_rejected() {
        let a = GeneratorSymbol::new("a", 2, 0, 1).unwrap();
        let c = GeneratorSymbol::new("c", 3, 0, 1).unwrap();
        let e = Presentation::new(
            "x",
            PresentationKind::Symmetric,
            vec![a.clone()],
            vec![Some(SymmetricAction::Sign(2))],
            vec![],
            OrderSpec::rpdl(),
        );
        assert!(matches!(e, Err(Error::InvalidAction(_))));
        // s1 sends c to -c but s1 s2 s1 != s2 s1 s2 when s2 = +1 ... on a
        // one-dimensional basis any signs satisfy braid, so test arity
        // mismatch instead
        let e = Presentation::new(
            "x",
            PresentationKind::Symmetric,
            vec![a, c],
            vec![Some(SymmetricAction::Table(vec![(1, 1)])), Some(SymmetricAction::Sign(1))],
            vec![],
            OrderSpec::rpdl(),
        );
        assert!(matches!(e, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let b = GeneratorSymbol::new("b", 2, 0, 1).unwrap();
        let n = |g, cs| Term::Node(g, cs);
        let l = Term::Leaf;
        let r = WrittenPolynomial {
            terms: vec![(rat(1), n(0, vec![n(0, vec![l(1), l(2)]), l(3)])), (rat(1), n(0, vec![l(1), l(2)]))],
        };
        let e = Presentation::new("x", PresentationKind::Shuffle, vec![b], vec![None], vec![r], OrderSpec::rpdl());
        assert!(matches!(e, Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn substitute_is_bilinear() {
        let gens = vec![GeneratorSymbol::new("b", 2, 1, 1).unwrap()];
        let b = generator_poly(Kind::Shuffle, &gens, 0);
        let unit = OperadPolynomial::monomial(TreeMonomial::unit(Kind::Shuffle), rat(1));
        let id = Unshuffle::identity(1, 1, 2);
        assert_eq!(substitute(&b, 1, &id, &unit).unwrap(), b);
        assert!(substitute(&OperadPolynomial::zero(), 1, &id, &b).unwrap().is_zero());
        let us = enumerate_unshuffles(1, 2, 2).unwrap();
        let x = substitute(&b, 1, &us[0], &b).unwrap();
        let y = substitute(&b, 1, &us[1], &b).unwrap();
        let mut sum = x.clone();
        sum.add_scaled(&y, &rat(3));
        let u = Unshuffle::identity(1, 3, 2);
        let two = {
            let mut s = x.clone();
            s.add_scaled(&y, &rat(3));
            s
        };
        let lhs = substitute(&b, 1, &u, &two).unwrap();
        let mut rhs = substitute(&b, 1, &u, &x).unwrap();
        rhs.add_scaled(&substitute(&b, 1, &u, &y).unwrap(), &rat(3));
        assert_eq!(lhs, rhs);
        assert_eq!(sum, two);
    }

    #[test]
    fn leading_term_stable_under_text() {
        let p = lie();
        let order = p.monomial_order();
        let r = &p.shuffle_relations().unwrap()[0];
        let txt = r.text(&p.gens, &order);
        assert!(txt.starts_with("1 * b(1,b(2,3))") || txt.starts_with("-1 * b(1,b(2,3))"), "{txt}");
    }

    #[test]
    fn morphism_identity_and_signs() {
        let gens = vec![GeneratorSymbol::new("b", 2, 1, 1).unwrap()];
        let images = vec![generator_poly(Kind::Shuffle, &gens, 0)];
        let m = Morphism {
            images: &images,
            kind: Kind::Shuffle,
            target_gens: &gens,
            target_actions: None,
        };
        for t in crate::tree::enumerate_tree_monomials(
            Kind::Shuffle,
            &gens,
            4,
            None,
            &MonomialOrder::new(OrderSpec::rpdl(), 1),
        )
        .unwrap()
        {
            let img = m.apply(&t.to_term()).unwrap();
            assert_eq!(img, OperadPolynomial::monomial(t.clone(), rat(1)), "{t:?}");
        }
    }
}
