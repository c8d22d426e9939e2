//! Quadratic duals, parity-level suspension and pure homotopy operads.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::opoly::{
    MonomialIndex, OperadPolynomial, Presentation, PresentationKind, SymmetricAction, WrittenPolynomial,
};
use crate::tree::{
    child_positions, enumerate_tree_monomials, is_node, GeneratorSymbol, Kind, MonomialOrder, Term, TreeMonomial,
};
use crate::veronese::{gb_up_to, generators_from, Evaluator, VeroneseBasisY};

/// Sign of the pairing between a two-vertex monomial and its dual.
pub const PAIRING_CONVENTION: &str =
    "<T, T*> = sgn(leaf reading of T) * (-1)^((i-1)(m-1)) for the inner vertex of arity m at slot i of the root";

#[derive(Clone, Debug)]
pub struct DualPresentation {
    pub presentation: Presentation,
    pub convention: String,
}

fn perm_sign(w: &[u32]) -> i8 {
    let mut s = 1i8;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                s = -s;
            }
        }
    }
    s
}

/// The pairing sign of a monomial with at most two vertices.
pub fn pairing_sign(t: &TreeMonomial) -> Result<i8> {
    let s = perm_sign(&t.leaf_reading());
    match t.node_count() {
        0 | 1 => Ok(s),
        2 => {
            let toks = t.tokens();
            let kids = child_positions(toks, 0);
            let (slot, pos) = kids
                .iter()
                .enumerate()
                .find(|(_, &p)| is_node(toks[p]))
                .map(|(i, &p)| (i + 1, p))
                .unwrap();
            let m = crate::tree::tok_arity(toks[pos]);
            let e = if ((slot - 1) * (m - 1)) % 2 == 1 { -1 } else { 1 };
            Ok(s * e)
        }
        n => Err(Error::Precondition(format!("pairing is defined on two-vertex monomials, got {n} vertices"))),
    }
}

/// Dual generators: same names, parity shifted by the arity.
pub fn dual_generators(gens: &[GeneratorSymbol]) -> Result<Vec<GeneratorSymbol>> {
    gens.iter()
        .map(|g| GeneratorSymbol::new(&g.id, g.arity, ((g.parity as usize + g.arity) % 2) as u8, g.weight))
        .collect()
}

fn to_written(p: &OperadPolynomial, order: &MonomialOrder) -> WrittenPolynomial {
    WrittenPolynomial {
        terms: p.sorted_terms(order).into_iter().map(|(t, c)| (c, t.to_term())).collect(),
    }
}

fn arities_two_vertex(gens: &[GeneratorSymbol]) -> Vec<usize> {
    let mut v: Vec<usize> = gens
        .iter()
        .flat_map(|a| gens.iter().map(move |b| a.arity + b.arity - 1))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn tree_kind_of(p: &Presentation) -> Kind {
    p.tree_kind()
}

/// Relation slices of a quadratic presentation: per arity, the two-vertex
/// monomials and the relation rows over them.
pub fn quadratic_slices(p: &Presentation) -> Result<BTreeMap<usize, (Vec<TreeMonomial>, Vec<SparseVec>)>> {
    let s = p.to_shuffle()?;
    let order = s.monomial_order();
    let kind = tree_kind_of(&s);
    let rels = s.shuffle_relations()?;
    let mut out = BTreeMap::new();
    for n in arities_two_vertex(&s.gens) {
        let monos: Vec<TreeMonomial> = enumerate_tree_monomials(kind, &s.gens, n, None, &order)?
            .into_iter()
            .filter(|t| t.node_count() == 2)
            .collect();
        out.insert(n, (monos, Vec::new()));
    }
    for r in rels {
        let Some((lead, _)) = r.leading(&order) else { continue };
        if r.terms().any(|(t, _)| t.node_count() != 2) {
            return Err(Error::Precondition(format!(
                "relation with leading term {} is not quadratic",
                lead.text(&s.gens)
            )));
        }
        let n = lead.arity();
        let (monos, rows) = out.get_mut(&n).unwrap();
        let idx = MonomialIndex::from_monomials(order.clone(), monos.iter().cloned());
        rows.push(idx.to_vec(&r));
    }
    // column order of MonomialIndex is the sorted order
    for (monos, _) in out.values_mut() {
        let idx = MonomialIndex::from_monomials(order.clone(), monos.iter().cloned());
        *monos = idx.monomials().to_vec();
    }
    Ok(out)
}

fn dual_monomial(t: &TreeMonomial, kind: Kind, dual_gens: &[GeneratorSymbol]) -> Result<TreeMonomial> {
    TreeMonomial::from_term(kind, &t.to_term(), dual_gens)
}

fn build_dual(
    name: &str,
    kind: Kind,
    order_spec: crate::tree::OrderSpec,
    dual_gens: Vec<GeneratorSymbol>,
    rels: Vec<OperadPolynomial>,
) -> Result<Presentation> {
    let order = MonomialOrder::new(order_spec, dual_gens.len());
    let pk = match kind {
        Kind::Shuffle => PresentationKind::Shuffle,
        Kind::Nonsymmetric => PresentationKind::Nonsymmetric,
    };
    let written = rels.iter().map(|r| to_written(r, &order)).collect();
    let n = dual_gens.len();
    Presentation::new(name, pk, dual_gens, vec![None; n], written, order_spec)
}

fn dual_name(name: &str) -> String {
    if let Some(base) = name.strip_suffix(":dual") {
        base.to_string()
    } else {
        format!("{name}:dual")
    }
}

/// Quadratic dual: relations are the annihilator of the source relations
/// under the signed monomial pairing.
pub fn quadratic_dual(p: &Presentation) -> Result<DualPresentation> {
    let s = p.to_shuffle()?;
    let kind = tree_kind_of(&s);
    let dual_gens = dual_generators(&s.gens)?;
    let mut rels = Vec::new();
    for (_, (monos, rows)) in quadratic_slices(&s)? {
        let signs: Vec<i8> = monos.iter().map(pairing_sign).collect::<Result<_>>()?;
        // column c of the twisted relation matrix is the image of basis vector c
        let mut images: Vec<SparseVec> = vec![Vec::new(); monos.len()];
        for (ri, row) in rows.iter().enumerate() {
            for (c, x) in row {
                let v = if signs[*c] < 0 { -x.clone() } else { x.clone() };
                images[*c].push((ri, v));
            }
        }
        let dmonos: Vec<TreeMonomial> =
            monos.iter().map(|m| dual_monomial(m, kind, &dual_gens)).collect::<Result<_>>()?;
        for k in kernel(&images, None)? {
            let mut poly = OperadPolynomial::zero();
            for (c, x) in k {
                poly.add_term(dmonos[c].clone(), x);
            }
            rels.push(poly);
        }
    }
    Ok(DualPresentation {
        presentation: build_dual(&dual_name(&s.name), kind, s.order, dual_gens, rels)?,
        convention: PAIRING_CONVENTION.to_string(),
    })
}

/// Pure homotopy operad of weight k: generators dual to the weight-k
/// normal monomials, relations the twisted image of the decomposition map,
/// i.e. the rows of the evaluation matrix on two-vertex trees.
pub fn pure_homotopy(p: &Presentation, k: usize) -> Result<DualPresentation> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let (gb, y) = veronese_data(p, k)?;
    pure_from(&gb, &y)
}

fn veronese_data(p: &Presentation, k: usize) -> Result<(crate::rewrite::GroebnerData, VeroneseBasisY)> {
    let best = p.gens.iter().map(|g| (g.arity - 1) / g.weight.max(1)).max().unwrap_or(1);
    let ya = 1 + best * k;
    let gb = gb_up_to(p, 2 * ya - 1, Some(2 * k))?;
    let y = generators_from(&gb, k)?;
    Ok((gb, y))
}

fn pure_from(gb: &crate::rewrite::GroebnerData, y: &VeroneseBasisY) -> Result<DualPresentation> {
    let order = MonomialOrder::new(gb.presentation.order, y.gens.len());
    let dual_gens = dual_generators(&y.gens)?;
    let mut ev = Evaluator::from_basis(gb, y);
    let mut rels = Vec::new();
    for n in arities_two_vertex(&y.gens) {
        let monos = enumerate_tree_monomials(y.kind, &y.gens, n, Some(2 * y.d), &order)?;
        let idx = MonomialIndex::from_monomials(order.clone(), monos.iter().cloned());
        let monos = idx.monomials().to_vec();
        // rows indexed by normal monomials of the target
        let mut rows: BTreeMap<TreeMonomial, SparseVec> = BTreeMap::new();
        for (c, m) in monos.iter().enumerate() {
            let v = ev.eval_term(&m.to_term())?;
            let s = pairing_sign(m)?;
            for (t, x) in v.terms() {
                let x = if s < 0 { -x.clone() } else { x.clone() };
                rows.entry(t.clone()).or_default().push((c, x));
            }
        }
        let mut e = Echelon::new();
        for (_, r) in rows {
            e.insert(r)?;
        }
        e.rref();
        let dmonos: Vec<TreeMonomial> =
            monos.iter().map(|m| dual_monomial(m, y.kind, &dual_gens)).collect::<Result<_>>()?;
        for r in e.rows_sorted() {
            let mut poly = OperadPolynomial::zero();
            for (c, x) in r {
                poly.add_term(dmonos[c].clone(), x);
            }
            rels.push(poly);
        }
    }
    let name = format!("{}:pure{}", clean(&y.source), y.d);
    Ok(DualPresentation {
        presentation: build_dual(&name, y.kind, gb.presentation.order, dual_gens, rels)?,
        convention: PAIRING_CONVENTION.to_string(),
    })
}

fn clean(s: &str) -> String {
    let c: String = s.chars().filter(|c| c.is_alphanumeric() || *c == ':' || *c == '_').collect();
    if c.is_empty() {
        "p".into()
    } else {
        c
    }
}

/// Dual of the quadratic Veronese power, computed as kernel then
/// annihilator.
pub fn dual_of_quadratic_veronese(p: &Presentation, k: usize) -> Result<DualPresentation> {
    let (gb, y) = veronese_data(p, k)?;
    let q = crate::veronese::quadratic_veronese_from(&gb, &y, None)?;
    quadratic_dual(&q)
}

/// Whether two quadratic presentations on the same generators have the
/// same relation space in every arity.
pub fn same_relation_spaces(a: &Presentation, b: &Presentation) -> Result<bool> {
    if a.gens != b.gens {
        return Ok(false);
    }
    let sa = quadratic_slices(a)?;
    let sb = quadratic_slices(b)?;
    for (n, (monos, ra)) in &sa {
        let Some((mb, rb)) = sb.get(n) else { return Ok(false) };
        if monos != mb {
            return Ok(false);
        }
        let r1 = crate::linalg::rank(ra, None)?;
        let r2 = crate::linalg::rank(rb, None)?;
        let mut both = ra.clone();
        both.extend(rb.iter().cloned());
        if r1 != r2 || crate::linalg::rank(&both, None)? != r1 {
            return Ok(false);
        }
    }
    Ok(sa.len() == sb.len())
}

fn suspension_sign(t: &Term, arity: usize) -> Result<i8> {
    // sign of the leaf reading times (-1)^((i-1)(n-1)) per internal edge
    fn edges(t: &Term, n: usize, acc: &mut i8, depth: usize) -> Result<usize> {
        match t {
            Term::Leaf(_) => Ok(depth),
            Term::Node(_, cs) => {
                let mut deepest = depth + 1;
                for (i, c) in cs.iter().enumerate() {
                    if matches!(c, Term::Node(..)) && (i * (n - 1)) % 2 == 1 {
                        *acc = -*acc;
                    }
                    deepest = deepest.max(edges(c, n, acc, depth + 1)?);
                }
                Ok(deepest)
            }
        }
    }
    let mut s = perm_sign(&t.leaves());
    let depth = edges(t, arity, &mut s, 0)?;
    let nodes = count_nodes(t);
    if nodes > 2 || depth > 2 {
        return Err(Error::Unsupported("suspension is implemented for relations with at most two vertices".into()));
    }
    Ok(s)
}

fn count_nodes(t: &Term) -> usize {
    match t {
        Term::Leaf(_) => 0,
        Term::Node(_, cs) => 1 + cs.iter().map(count_nodes).sum::<usize>(),
    }
}

/// Operadic suspension at the level of parities: generator parity shifts by
/// n - 1, the symmetric action is twisted by the sign representation and
/// written terms pick up the slot-dependent suspension signs.
pub fn suspend_parity(p: &Presentation) -> Result<Presentation> {
    let n = p.gens.first().map(|g| g.arity).ok_or_else(|| Error::Precondition("no generators".into()))?;
    if p.gens.iter().any(|g| g.arity != n) {
        return Err(Error::Unsupported("suspension needs all generators of one arity".into()));
    }
    let gens = p
        .gens
        .iter()
        .map(|g| GeneratorSymbol::new(&g.id, g.arity, ((g.parity as usize + n - 1) % 2) as u8, g.weight))
        .collect::<Result<Vec<_>>>()?;
    let actions = p
        .actions
        .iter()
        .map(|a| {
            a.as_ref().map(|a| match a {
                SymmetricAction::Sign(s) => SymmetricAction::Sign(-s),
                SymmetricAction::Table(t) => SymmetricAction::Table(t.iter().map(|&(h, s)| (h, -s)).collect()),
            })
        })
        .collect();
    let relations = p
        .relations
        .iter()
        .map(|r| {
            let terms = r
                .terms
                .iter()
                .map(|(c, t)| Ok((if suspension_sign(t, n)? < 0 { -c.clone() } else { c.clone() }, t.clone())))
                .collect::<Result<Vec<_>>>()?;
            Ok(WrittenPolynomial { terms })
        })
        .collect::<Result<Vec<_>>>()?;
    let name = match p.name.strip_suffix(":susp") {
        Some(b) => b.to_string(),
        None => format!("{}:susp", p.name),
    };
    Presentation::new(&name, p.kind, gens, actions, relations, p.order)
}

/// Per-arity relation counts, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct SliceSummary {
    pub arity: usize,
    pub monomials: usize,
    pub relations: usize,
}

pub fn slice_summary(p: &Presentation) -> Result<Vec<SliceSummary>> {
    Ok(quadratic_slices(p)?
        .into_iter()
        .map(|(arity, (m, r))| SliceSummary {
            arity,
            monomials: m.len(),
            relations: crate::linalg::rank(&r, None).unwrap_or(r.len()),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;
    use crate::rewrite::dims;

    #[test]
    fn classical_duals() {
        let d = |n: &str, a: usize| dims(&quadratic_dual(&preset(n).unwrap()).unwrap().presentation, a).unwrap();
        assert_eq!(d("com", 5), vec![1, 1, 2, 6, 24]);
        assert_eq!(d("lie", 5), vec![1, 1, 1, 1, 1]);
        assert_eq!(d("ass", 5), vec![1, 2, 6, 24, 120]);
        assert_eq!(d("prelie", 5), vec![1, 2, 3, 4, 5]);
        assert_eq!(d("perm", 5), vec![1, 2, 9, 64, 625]);
    }

    #[test]
    fn annihilator_dimensions() {
        for name in ["com", "lie", "lts", "tcom:3:0"] {
            let p = preset(name).unwrap();
            let q = quadratic_dual(&p);
            if name == "lts" {
                // the linear relation makes the presentation non-quadratic
                assert!(q.is_err());
                continue;
            }
            let q = q.unwrap().presentation;
            let a = slice_summary(&p).unwrap();
            let b = slice_summary(&q).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.monomials, y.monomials);
                assert_eq!(x.relations + y.relations, x.monomials);
            }
            let back = quadratic_dual(&q).unwrap().presentation;
            assert!(same_relation_spaces(&back, &p.to_shuffle().unwrap()).unwrap());
        }
    }

    #[test]
    fn suspension() {
        let t = preset("tcom:3:1").unwrap();
        let s = suspend_parity(&t).unwrap();
        assert_eq!(dims(&s, 7).unwrap(), dims(&t, 7).unwrap());
        let back = suspend_parity(&s).unwrap();
        assert_eq!(back, t);
        let t2 = preset("tcom:2:1").unwrap();
        let s2 = suspend_parity(&t2).unwrap();
        assert_eq!(dims(&s2, 6).unwrap(), vec![1, 1, 1, 0, 0, 0]);
        let n = preset("nlie:3:1").unwrap();
        assert_eq!(dims(&suspend_parity(&n).unwrap(), 7).unwrap(), dims(&preset("tlie:3:1").unwrap(), 7).unwrap());
    }
}
