//! Built-in presentations and reference dimension tables.

use serde::Serialize;

use crate::cli::{parse_combination, parse_presentation};
use crate::error::{Error, Result};
use crate::exact::{double_factorial, factorial};
use crate::opoly::{permutations, Presentation, WrittenPolynomial};
use crate::series::tangent_dims;
use crate::tree::GeneratorSymbol;

/// Fixed-name presets. Parametric families are `tcom:n:d`, `nlie:n:d`,
/// `stcom:n:d` and `tlie:n:d`.
pub const NAMES: &[&str] = &[
    "lie", "com", "ass", "prelie", "perm", "leib", "jord", "lts", "jts", "tass", "example1", "example2", "free",
];

pub const FAMILIES: &[&str] = &["tcom", "nlie", "stcom", "tlie"];

const LIE: &str = "\
operad lie
kind symmetric
generator b arity 2 degree 0 action sign(-1)
relation b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)
";

const COM: &str = "\
operad com
kind symmetric
generator m arity 2 degree 0 action sign(+1)
relation m(m(1,2),3) = m(1,m(2,3))
";

// x(a,b) = ab and y(a,b) = ba span the regular representation of S_2
const ASS: &str = "\
operad ass
kind symmetric
generator x arity 2 degree 0 action table(+y)
generator y arity 2 degree 0 action table(+x)
relation x(x(1,2),3) = x(1,x(2,3))
";

const PRELIE: &str = "\
operad prelie
kind symmetric
generator x arity 2 degree 0 action table(+y)
generator y arity 2 degree 0 action table(+x)
relation x(x(1,2),3) - x(1,x(2,3)) = x(x(1,3),2) - x(1,x(3,2))
";

const PERM: &str = "\
operad perm
kind symmetric
generator x arity 2 degree 0 action table(+y)
generator y arity 2 degree 0 action table(+x)
relation x(x(1,2),3) = x(1,x(2,3))
relation x(x(1,2),3) = x(x(1,3),2)
";

const LEIB: &str = "\
operad leib
kind symmetric
generator x arity 2 degree 0 action table(+y)
generator y arity 2 degree 0 action table(+x)
relation x(1,x(2,3)) = x(x(1,2),3) + x(2,x(1,3))
";

const JORD: &str = "\
operad jord
kind symmetric
generator m arity 2 degree 0 action sign(+1)
relation m(m(m(1,2),3),4) + m(m(m(1,4),3),2) + m(m(m(2,4),3),1) = m(m(1,2),m(3,4)) + m(m(1,3),m(2,4)) + m(m(1,4),m(2,3))
";

// l = [1,2,3], l2 = [1,3,2], l3 = [2,3,1]
const LTS: &str = "\
operad lts
kind symmetric
generator l arity 3 degree 0 action table(-l,+l2)
generator l2 arity 3 degree 0 action table(+l3,+l)
generator l3 arity 3 degree 0 action table(+l2,-l3)
relation l(1,2,3) + l(2,3,1) + l(3,1,2)
relation l(1,2,l(3,4,5)) = l(l(1,2,3),4,5) + l(3,l(1,2,4),5) + l(3,4,l(1,2,5))
";

// j = {1,2,3}, j2 = {1,3,2}, j3 = {2,1,3}; {a,b,c} = {c,b,a}
const JTS: &str = "\
operad jts
kind symmetric
generator j arity 3 degree 0 action table(+j3,+j2)
generator j2 arity 3 degree 0 action table(+j2,+j)
generator j3 arity 3 degree 0 action table(+j,+j3)
relation j(1,2,j(3,4,5)) = j(j(1,2,3),4,5) - j(3,j(2,1,4),5) + j(3,4,j(1,2,5))
";

const EXAMPLE1: &str = "\
operad example1
kind nonsymmetric
generator w arity 2 degree 0
relation w(1,w(2,w(3,4)))
";

const EXAMPLE2: &str = "\
operad example2
kind nonsymmetric
generator mu arity 2 degree 0
generator rho arity 2 degree 0
generator nu arity 2 degree 0
order pdl
relation mu(nu(1,2),3) = rho(1,nu(2,3))
relation rho(nu(1,2),3)
relation mu(mu(1,2),3)
relation mu(1,mu(2,3))
relation mu(rho(1,2),3)
relation mu(1,rho(2,3))
relation rho(rho(1,2),3)
relation rho(1,rho(2,3))
relation rho(mu(1,2),3)
relation rho(1,mu(2,3))
relation nu(mu(1,2),3)
relation nu(1,mu(2,3))
relation nu(rho(1,2),3)
relation nu(1,rho(2,3))
";

const FREE: &str = "\
operad free
kind symmetric
generator m arity 2 degree 0 action sign(+1)
";

fn nested(op: &str, n: usize, slot: usize) -> String {
    // op composed with op at `slot`, leaves in order
    let mut args = Vec::new();
    let mut next = 1;
    for s in 1..=n {
        if s == slot {
            let inner: Vec<String> = (next..next + n).map(|l| l.to_string()).collect();
            args.push(format!("{op}({})", inner.join(",")));
            next += n;
        } else {
            args.push(next.to_string());
            next += 1;
        }
    }
    format!("{op}({})", args.join(","))
}

fn perm_sign(p: &[u32]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Sum over (n, n-1)-unshuffles of (op o_1 op) with optional signs.
fn unshuffle_sum(op: &str, n: usize, signed: bool) -> String {
    let m = 2 * n - 1;
    let mut parts = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let inner: Vec<u32> = (1..=m as u32).filter(|l| mask & (1 << (l - 1)) != 0).collect();
        let outer: Vec<u32> = (1..=m as u32).filter(|l| mask & (1 << (l - 1)) == 0).collect();
        let word: Vec<u32> = inner.iter().chain(&outer).copied().collect();
        let s = if signed { perm_sign(&word) } else { 1 };
        let args: Vec<String> = outer.iter().map(|l| l.to_string()).collect();
        let inner_s: Vec<String> = inner.iter().map(|l| l.to_string()).collect();
        let term = format!("{op}({op}({}),{})", inner_s.join(","), args.join(","));
        parts.push((s, term));
    }
    parts.sort_by(|a, b| a.1.cmp(&b.1));
    let mut out = String::new();
    for (k, (s, t)) in parts.iter().enumerate() {
        match (k, *s) {
            (0, 1) => out.push_str(t),
            (0, _) => out.push_str(&format!("-{t}")),
            (_, 1) => out.push_str(&format!(" + {t}")),
            _ => out.push_str(&format!(" - {t}")),
        }
    }
    out
}

fn family_text(family: &str, n: usize, d: usize) -> Result<String> {
    if !(2..=6).contains(&n) {
        return Err(Error::Precondition(format!("arity parameter {n} must lie in 2..=6")));
    }
    let p = d % 2;
    let mut t = format!("operad {family}:{n}:{d}\nkind symmetric\n");
    match family {
        "tcom" | "stcom" => {
            let sign = if family == "tcom" { "+1" } else { "-1" };
            t.push_str(&format!("generator mu arity {n} degree {p} action sign({sign})\n"));
            // odd parity needs the right-comb-normal order
            if p == 1 {
                t.push_str("order pdl\n");
            }
            let first = nested("mu", n, 1);
            for j in 2..=n {
                // suspension twist (-1)^((j-1)(n-1)) under our composition signs
            let tw = if family == "stcom" && ((j - 1) * (n - 1)) % 2 == 1 { -1 } else { 1 };
                let rhs = nested("mu", n, j);
                if tw == 1 {
                    t.push_str(&format!("relation {first} = {rhs}\n"));
                } else {
                    t.push_str(&format!("relation {first} = -{rhs}\n"));
                }
            }
        }
        "nlie" | "tlie" => {
            let sign = if family == "nlie" { "-1" } else { "+1" };
            t.push_str(&format!("generator l arity {n} degree {p} action sign({sign})\n"));
            t.push_str(&format!("relation {}\n", unshuffle_sum("l", n, family == "nlie")));
        }
        _ => return Err(Error::UnknownPreset(family.to_string())),
    }
    Ok(t)
}

/// Presentation file text of a preset.
pub fn preset_text(name: &str) -> Result<String> {
    let fixed = match name {
        "lie" => Some(LIE),
        "com" => Some(COM),
        "ass" => Some(ASS),
        "prelie" => Some(PRELIE),
        "perm" => Some(PERM),
        "leib" => Some(LEIB),
        "jord" => Some(JORD),
        "lts" => Some(LTS),
        "jts" => Some(JTS),
        "tass" => Some(tass_text()),
        "example1" => Some(EXAMPLE1),
        "example2" => Some(EXAMPLE2),
        "free" => Some(FREE),
        _ => None,
    };
    if let Some(t) = fixed {
        return Ok(t.to_string());
    }
    let parts: Vec<&str> = name.split(':').collect();
    if parts.len() == 3 && FAMILIES.contains(&parts[0]) {
        let n = parts[1].parse().map_err(|_| Error::UnknownPreset(name.into()))?;
        let d = parts[2].parse().map_err(|_| Error::UnknownPreset(name.into()))?;
        return family_text(parts[0], n, d);
    }
    Err(Error::UnknownPreset(name.to_string()))
}

fn tass_text() -> &'static str {
    // t_abc(x1,x2,x3) = (x_a, x_b, x_c); s_j sends t_p to t_{s_j p}
    static TEXT: std::sync::OnceLock<String> = std::sync::OnceLock::new();
    TEXT.get_or_init(|| {
        let perms = permutations(3);
        let id = |p: &[u32]| format!("t{}{}{}", p[0], p[1], p[2]);
        let mut s = String::from("operad tass\nkind symmetric\n");
        for p in &perms {
            let imgs: Vec<String> = (1..3u32)
                .map(|j| {
                    let q: Vec<u32> = p
                        .iter()
                        .map(|&x| if x == j { j + 1 } else if x == j + 1 { j } else { x })
                        .collect();
                    format!("+{}", id(&q))
                })
                .collect();
            s.push_str(&format!("generator {} arity 3 degree 0 action table({})\n", id(p), imgs.join(",")));
        }
        s.push_str("relation t123(t123(1,2,3),4,5) = t123(1,t123(2,3,4),5)\n");
        s.push_str("relation t123(t123(1,2,3),4,5) = t123(1,2,t123(3,4,5))\n");
        s
    })
}

pub fn preset(name: &str) -> Result<Presentation> {
    parse_presentation(&preset_text(name)?)
}

/// Names of the shipped preset files, with family instances.
pub fn shipped() -> Vec<String> {
    let mut v: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
    for s in ["tcom:2:0", "tcom:2:1", "tcom:3:0", "tcom:3:1", "tcom:4:1", "nlie:3:0", "stcom:3:1", "tlie:3:0"] {
        v.push(s.to_string());
    }
    v
}

/// File name of a shipped preset.
pub fn file_name(name: &str) -> String {
    format!("{}.oprd", name.replace(':', "-"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// closed formula
    Formula,
    /// classical value
    Classical,
    /// obtained by an independent computation
    Computed,
}

#[derive(Clone, Debug, Serialize)]
pub struct KnownDims {
    pub name: String,
    /// (arity, dimension, provenance)
    pub entries: Vec<(usize, u64, Provenance)>,
}

impl KnownDims {
    pub fn get(&self, arity: usize) -> Option<u64> {
        self.entries.iter().find(|e| e.0 == arity).map(|e| e.1)
    }

    pub fn max_arity(&self) -> usize {
        self.entries.iter().map(|e| e.0).max().unwrap_or(0)
    }
}

fn table(name: &str, upto: usize, f: impl Fn(usize) -> u64, p: Provenance) -> KnownDims {
    KnownDims {
        name: name.to_string(),
        entries: (1..=upto).map(|n| (n, f(n), p)).collect(),
    }
}

fn fact(n: usize) -> u64 {
    u64::try_from(factorial(n as u64)).unwrap()
}

/// Reference dimensions, arity by arity.
pub fn known_dims(name: &str) -> Result<KnownDims> {
    use Provenance::*;
    let odd = |n: usize, f: &dyn Fn(usize) -> u64| if n % 2 == 1 { f(n) } else { 0 };
    let t = match name {
        "lie" => table(name, 8, |n| fact(n - 1), Classical),
        "com" => table(name, 8, |_| 1, Classical),
        "ass" => table(name, 7, fact, Classical),
        "prelie" => table(name, 6, |n| (n as u64).pow(n as u32 - 1), Classical),
        "perm" => table(name, 7, |n| n as u64, Computed),
        "leib" => table(name, 7, fact, Classical),
        "lts" => table(name, 7, |n| odd(n, &|n| fact(n - 1)), Formula),
        "tass" => table(name, 5, |n| odd(n, &fact), Computed),
        "free" => {
            // commutative binary trees: (2n-3)!!
            table(name, 7, |n| u64::try_from(double_factorial(2 * n as i64 - 3)).unwrap(), Classical)
        }
        "cominf3" => {
            let b = crate::exact::BernoulliTable::new(10);
            let mut e = Vec::new();
            for n in 1..=9usize {
                let v = if n % 2 == 1 {
                    u64::try_from(tangent_dims(n.div_ceil(2), &b)?).unwrap()
                } else {
                    0
                };
                e.push((n, v, Formula));
            }
            KnownDims {
                name: name.into(),
                entries: e,
            }
        }
        "linf3" => table(
            name,
            9,
            |n| {
                odd(n, &|n| {
                    let k = (n + 1) / 2;
                    let d = u64::try_from(double_factorial(2 * k as i64 - 3)).unwrap();
                    d * d
                })
            },
            Formula,
        ),
        "example2" => KnownDims {
            name: name.into(),
            entries: vec![(1, 1, Computed), (2, 3, Computed), (3, 4, Computed)],
        },
        other => {
            let parts: Vec<&str> = other.split(':').collect();
            if parts.len() == 3 && parts[0] == "tcom" {
                let n: usize = parts[1].parse().map_err(|_| Error::UnknownPreset(other.into()))?;
                let d: usize = parts[2].parse().map_err(|_| Error::UnknownPreset(other.into()))?;
                let f = move |k: usize| -> u64 {
                    if d % 2 == 0 {
                        u64::from((k - 1) % (n - 1) == 0)
                    } else {
                        u64::from(k == 1 || k == n || k == 2 * n - 1)
                    }
                };
                table(other, 10, f, Formula)
            } else {
                return Err(Error::UnknownPreset(other.into()));
            }
        }
    };
    Ok(t)
}

/// Interpretation of the generators of a triple-system preset inside a
/// binary operad: target preset name and one image per generator.
pub struct Realization {
    pub target: String,
    pub images: Vec<WrittenPolynomial>,
}

pub fn realization(name: &str) -> Result<Realization> {
    let (target, imgs): (&str, Vec<&str>) = match name {
        "lts" => ("lie", vec!["b(b(1,2),3)", "b(b(1,3),2)", "b(b(2,3),1)"]),
        "jts" => (
            "jord",
            vec![
                "m(m(1,2),3) + m(1,m(2,3)) - m(2,m(1,3))",
                "m(m(1,3),2) + m(1,m(3,2)) - m(3,m(1,2))",
                "m(m(2,1),3) + m(2,m(1,3)) - m(1,m(2,3))",
            ],
        ),
        "tcom:3:0" => ("com", vec!["m(m(1,2),3)"]),
        "tass" => {
            let target = preset("ass")?;
            let images = permutations(3)
                .into_iter()
                .map(|p| parse_combination(&format!("x(x({},{}),{})", p[0], p[1], p[2]), &target.gens))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Realization {
                target: "ass".into(),
                images,
            });
        }
        _ => return Err(Error::UnknownPreset(format!("{name} has no realization"))),
    };
    let target_p = preset(target)?;
    let images = imgs
        .into_iter()
        .map(|s| parse_combination(s, &target_p.gens))
        .collect::<Result<Vec<_>>>()?;
    Ok(Realization {
        target: target.into(),
        images,
    })
}

/// Ternary operations of the pre-Lie corpus: t1(a,b,c) = (ab)c and
/// t2(a,b,c) = a(bc).
pub fn prelie_triple_generators() -> Vec<GeneratorSymbol> {
    vec![
        GeneratorSymbol::new("t1", 3, 0, 1).unwrap(),
        GeneratorSymbol::new("t2", 3, 0, 1).unwrap(),
    ]
}

const PRELIE_CORPUS: &[&str] = &[
    "t1(1,2,3) - t2(1,2,3) - t1(1,3,2) + t2(1,3,2)",
    "t2(t1(1,2,3),4,5) - t1(t2(1,4,5),2,3) + t1(1,t1(4,5,2),3) - t1(1,t2(2,4,5),3) + t1(1,2,t1(4,5,3)) - t1(1,2,t2(3,4,5))",
    "t1(t1(1,2,3),4,5) - t1(t1(1,4,2),3,5) + t1(t1(1,4,3),2,5) - t1(t1(1,3,2),4,5) - t1(1,t1(2,3,4),5) + t1(1,t1(4,2,3),5) - t1(1,t1(4,3,2),5) + t1(1,t1(3,2,4),5)",
    "t2(t1(1,2,3),4,5) - t1(t2(1,4,5),2,3) + t2(t2(1,4,5),2,3) - t2(t2(1,2,3),4,5) \
     + t1(1,t1(4,5,2),3) + t1(1,t1(4,5,3),2) - t1(1,t1(2,3,5),4) - t2(1,t1(4,5,3),2) \
     + t2(1,t1(2,3,5),4) - t1(1,t2(2,4,5),3) - t1(1,t2(3,4,5),2) - t2(1,t2(4,2,3),5) \
     + t2(1,t2(2,4,5),3) + t2(1,t2(3,4,5),2) + t1(1,4,t1(2,3,5)) - t2(1,4,t2(5,2,3))",
];

/// The four known relations among t1, t2, as written combinations.
pub fn prelie_triple_corpus() -> Result<Vec<WrittenPolynomial>> {
    let g = prelie_triple_generators();
    PRELIE_CORPUS.iter().map(|s| parse_combination(s, &g)).collect()
}

/// Images of t1, t2 in the pre-Lie preset.
pub fn prelie_triple_images() -> Result<Vec<WrittenPolynomial>> {
    let p = preset("prelie")?;
    ["x(x(1,2),3)", "x(1,x(2,3))"].iter().map(|s| parse_combination(s, &p.gens)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_parses() {
        for n in shipped() {
            let p = preset(&n).unwrap();
            assert!(!p.gens.is_empty(), "{n}");
        }
        assert!(preset("nope").is_err());
        assert!(preset("tcom:9:1").is_err());
    }

    #[test]
    fn family_relations() {
        let p = preset("tcom:3:1").unwrap();
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.gens[0].parity, 1);
        let l = preset("nlie:2:0").unwrap();
        // Jacobi: three terms, one with a minus sign
        assert_eq!(l.relations[0].terms.len(), 3);
        let negs = l.relations[0].terms.iter().filter(|t| t.0 < num_traits::Zero::zero()).count();
        assert_eq!(negs, 1);
    }

    #[test]
    fn corpus_parses() {
        let c = prelie_triple_corpus().unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c[3].terms.len(), 16);
    }

    #[test]
    fn tables() {
        assert_eq!(known_dims("cominf3").unwrap().get(7), Some(272));
        assert_eq!(known_dims("linf3").unwrap().get(7), Some(225));
        assert_eq!(known_dims("tcom:3:1").unwrap().get(5), Some(1));
        assert_eq!(known_dims("tcom:3:1").unwrap().get(7), Some(0));
        assert_eq!(known_dims("tcom:3:0").unwrap().get(7), Some(1));
    }
}
