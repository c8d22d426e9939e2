//! Line-oriented presentation files.
//!
//! ```text
//! operad lie
//! kind symmetric
//! generator b arity 2 degree 0 action sign(-1)
//! order rpdl
//! relation b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)
//! ```
//!
//! A relation may also be written `lhs = rhs`. Table actions list, for each
//! transposition s_1, s_2, ..., the signed image generator: `table(+c,-b)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::opoly::{format_combination, Presentation, PresentationKind, SymmetricAction, WrittenPolynomial};
use crate::tree::{GeneratorSymbol, OrderSpec, Term};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    offset: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, offset: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
            offset,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.offset + self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(d) => Err(self.err(format!("expected `{c}`, found `{d}`"))),
                None => Err(self.err(format!("expected `{c}`, found end of line"))),
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_alphabetic() || *c == '_' => {}
            _ => return None,
        }
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_monomial(cur: &mut Cursor, gens: &[GeneratorSymbol]) -> Result<Term> {
    let start = cur.pos;
    if let Some(n) = cur.integer() {
        let v: u32 = n.parse().map_err(|_| cur.err("leaf label too large"))?;
        if v == 0 || v >= 1 << 16 {
            cur.pos = start;
            return Err(cur.err("leaf labels start at 1"));
        }
        return Ok(Term::Leaf(v));
    }
    let id_pos = {
        cur.skip_ws();
        cur.pos
    };
    let Some(id) = cur.ident() else {
        return Err(cur.err("expected a monomial"));
    };
    if id == "id" && cur.peek() != Some('(') {
        return Ok(Term::Leaf(1));
    }
    let Some(g) = gens.iter().position(|s| s.id == id) else {
        cur.pos = id_pos;
        return Err(cur.err(format!("unknown generator `{id}`")));
    };
    cur.expect('(')?;
    let mut kids = vec![parse_monomial(cur, gens)?];
    while cur.eat(',') {
        kids.push(parse_monomial(cur, gens)?);
    }
    cur.expect(')')?;
    if kids.len() != gens[g].arity {
        cur.pos = id_pos;
        return Err(cur.err(format!(
            "generator `{id}` has arity {} but {} arguments were given",
            gens[g].arity,
            kids.len()
        )));
    }
    Ok(Term::Node(g, kids))
}

fn parse_coefficient(cur: &mut Cursor) -> Result<Option<Rational>> {
    let save = cur.pos;
    let Some(num) = cur.integer() else { return Ok(None) };
    let mut q: Rational = Rational::from_integer(num.parse().unwrap());
    if cur.eat('/') {
        let Some(den) = cur.integer() else {
            return Err(cur.err("expected a denominator"));
        };
        let d: num_bigint::BigInt = den.parse().unwrap();
        if d.is_zero() {
            return Err(cur.err("zero denominator"));
        }
        q /= Rational::from_integer(d);
    }
    if cur.eat('*') {
        return Ok(Some(q));
    }
    match cur.peek() {
        Some(c) if c.is_alphabetic() || c == '_' => Ok(Some(q)),
        _ => {
            // a bare leaf: the unit monomial
            cur.pos = save;
            Ok(None)
        }
    }
}

fn parse_side(cur: &mut Cursor, gens: &[GeneratorSymbol], sign: i64, out: &mut Vec<(Rational, Term)>) -> Result<()> {
    let mut first = true;
    loop {
        let mut s = sign;
        if cur.eat('-') {
            s = -s;
        } else if !cur.eat('+') && !first {
            break;
        }
        first = false;
        let c = parse_coefficient(cur)?.unwrap_or_else(Rational::one);
        let t = parse_monomial(cur, gens)?;
        out.push((c * Rational::from_integer(s.into()), t));
        match cur.peek() {
            Some('+') | Some('-') => continue,
            _ => break,
        }
    }
    Ok(())
}

fn parse_combination_at(cur: &mut Cursor, gens: &[GeneratorSymbol]) -> Result<WrittenPolynomial> {
    let mut terms = Vec::new();
    parse_side(cur, gens, 1, &mut terms)?;
    if cur.eat('=') {
        parse_side(cur, gens, -1, &mut terms)?;
    }
    if !cur.at_end() {
        let c = cur.peek().unwrap();
        return Err(cur.err(format!("unexpected `{c}`")));
    }
    Ok(WrittenPolynomial { terms })
}

/// Parses a written combination such as `b(b(1,2),3) - 1/2 * b(1,b(2,3))`.
pub fn parse_combination(text: &str, gens: &[GeneratorSymbol]) -> Result<WrittenPolynomial> {
    parse_combination_at(&mut Cursor::new(text, 1, 0), gens)
}

/// Parses a single monomial term.
pub fn parse_term(text: &str, gens: &[GeneratorSymbol]) -> Result<Term> {
    let mut cur = Cursor::new(text, 1, 0);
    let t = parse_monomial(&mut cur, gens)?;
    if !cur.at_end() {
        return Err(cur.err("trailing input after monomial"));
    }
    Ok(t)
}

fn parse_action(cur: &mut Cursor) -> Result<(SymmetricAction, Vec<String>)> {
    let Some(word) = cur.ident() else {
        return Err(cur.err("expected `sign(...)` or `table(...)`"));
    };
    match word.as_str() {
        "sign" => {
            cur.expect('(')?;
            let s = if cur.eat('-') {
                -1
            } else {
                cur.eat('+');
                1
            };
            if cur.integer().as_deref() != Some("1") {
                return Err(cur.err("sign must be +1 or -1"));
            }
            cur.expect(')')?;
            Ok((SymmetricAction::Sign(s), Vec::new()))
        }
        "table" => {
            cur.expect('(')?;
            let mut names = Vec::new();
            let mut entries = Vec::new();
            loop {
                let s = if cur.eat('-') {
                    -1
                } else {
                    cur.eat('+');
                    1
                };
                let Some(id) = cur.ident() else {
                    return Err(cur.err("expected a generator id"));
                };
                entries.push((usize::MAX, s));
                names.push(id);
                if !cur.eat(',') {
                    break;
                }
            }
            cur.expect(')')?;
            Ok((SymmetricAction::Table(entries), names))
        }
        other => Err(cur.err(format!("unknown action `{other}`"))),
    }
}

struct PendingGen {
    sym: GeneratorSymbol,
    action: Option<(SymmetricAction, Vec<String>, usize, usize)>,
}

/// Parses a presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut name: Option<String> = None;
    let mut kind: Option<PresentationKind> = None;
    let mut order = OrderSpec::default();
    let mut gens: Vec<PendingGen> = Vec::new();
    let mut rel_lines: Vec<(usize, usize, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap();
        if body.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(body, line, 0);
        let kw_pos = {
            cur.skip_ws();
            cur.pos
        };
        let Some(kw) = cur.ident() else {
            return Err(cur.err("expected a keyword"));
        };
        match kw.as_str() {
            "operad" => {
                let Some(n) = cur.ident() else { return Err(cur.err("expected an operad name")) };
                let mut n = n;
                // allow names like tcom:3:1
                while cur.eat(':') {
                    let part = cur.integer().or_else(|| cur.ident()).ok_or_else(|| cur.err("bad name"))?;
                    n.push(':');
                    n.push_str(&part);
                }
                if !cur.at_end() {
                    return Err(cur.err("trailing input after operad name"));
                }
                name = Some(n);
            }
            "kind" => {
                let k = cur.ident().unwrap_or_default();
                kind = Some(match k.as_str() {
                    "shuffle" => PresentationKind::Shuffle,
                    "nonsymmetric" => PresentationKind::Nonsymmetric,
                    "symmetric" => PresentationKind::Symmetric,
                    _ => return Err(cur.err("kind must be shuffle, nonsymmetric or symmetric")),
                });
                if !cur.at_end() {
                    return Err(cur.err("trailing input after kind"));
                }
            }
            "order" => {
                cur.skip_ws();
                let rest: String = cur.chars[cur.pos..].iter().collect();
                order = OrderSpec::parse(&rest).map_err(|e| cur.err(e.to_string()))?;
            }
            "generator" => {
                let Some(id) = cur.ident() else { return Err(cur.err("expected a generator id")) };
                if id == "id" {
                    return Err(cur.err("`id` is reserved for the unit"));
                }
                let (mut arity, mut degree, mut weight) = (None, None, 1usize);
                let mut action = None;
                loop {
                    if cur.at_end() {
                        break;
                    }
                    let at = cur.pos;
                    let Some(word) = cur.ident() else { return Err(cur.err("expected an attribute")) };
                    let number = |cur: &mut Cursor| -> Result<usize> {
                        cur.integer()
                            .and_then(|s| s.parse().ok())
                            .ok_or_else(|| cur.err(format!("expected a number after `{word}`")))
                    };
                    match word.as_str() {
                        "arity" => arity = Some(number(&mut cur)?),
                        "degree" => {
                            let d = number(&mut cur)?;
                            if d > 1 {
                                cur.pos -= 1;
                                return Err(cur.err("degree must be 0 or 1"));
                            }
                            degree = Some(d as u8);
                        }
                        "weight" => weight = number(&mut cur)?,
                        "action" => {
                            let col = cur.pos;
                            let (a, names) = parse_action(&mut cur)?;
                            action = Some((a, names, line, col));
                        }
                        _ => {
                            cur.pos = at;
                            cur.skip_ws();
                            return Err(cur.err(format!("unknown attribute `{word}`")));
                        }
                    }
                }
                let arity = arity.ok_or_else(|| cur.err("missing `arity`"))?;
                let degree = degree.ok_or_else(|| cur.err("missing `degree`"))?;
                let sym = GeneratorSymbol::new(&id, arity, degree, weight).map_err(|e| Error::Syntax {
                    line,
                    column: kw_pos + 1,
                    message: e.to_string(),
                })?;
                if gens.iter().any(|g| g.sym.id == id) {
                    return Err(Error::Syntax {
                        line,
                        column: kw_pos + 1,
                        message: format!("duplicate generator `{id}`"),
                    });
                }
                gens.push(PendingGen { sym, action });
            }
            "relation" => {
                cur.skip_ws();
                let rest: String = cur.chars[cur.pos..].iter().collect();
                rel_lines.push((line, cur.pos, rest));
            }
            other => {
                cur.pos = kw_pos;
                return Err(cur.err(format!("unknown keyword `{other}`")));
            }
        }
    }
    let kind = kind.ok_or_else(|| Error::Parse("missing `kind` line".into()))?;
    let syms: Vec<GeneratorSymbol> = gens.iter().map(|g| g.sym.clone()).collect();
    let mut actions = Vec::with_capacity(gens.len());
    for g in &gens {
        match &g.action {
            None => actions.push(None),
            Some((SymmetricAction::Table(entries), names, line, col)) => {
                let mut t = Vec::with_capacity(entries.len());
                for ((_, s), n) in entries.iter().zip(names) {
                    let h = syms.iter().position(|x| &x.id == n).ok_or_else(|| Error::Syntax {
                        line: *line,
                        column: col + 1,
                        message: format!("unknown generator `{n}` in action table"),
                    })?;
                    t.push((h, *s));
                }
                actions.push(Some(SymmetricAction::Table(t)));
            }
            Some((a, _, _, _)) => actions.push(Some(a.clone())),
        }
    }
    let mut relations = Vec::with_capacity(rel_lines.len());
    for (line, col, body) in &rel_lines {
        let mut cur = Cursor::new(body, *line, *col);
        let r = parse_combination_at(&mut cur, &syms)?;
        check_relation_shape(&r, &syms).map_err(|e| match e {
            Error::Inhomogeneous(m) => Error::Inhomogeneous(format!("line {line}: {m}")),
            Error::Parse(m) => Error::Syntax {
                line: *line,
                column: col + 1,
                message: m,
            },
            other => other,
        })?;
        relations.push(r);
    }
    Presentation::new(&name.unwrap_or_else(|| "unnamed".into()), kind, syms, actions, relations, order)
}

fn check_relation_shape(r: &WrittenPolynomial, gens: &[GeneratorSymbol]) -> Result<()> {
    let mut shape = None;
    for (_, t) in &r.terms {
        let mut labels = t.leaves();
        let n = labels.len();
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &l)| l as usize != i + 1) {
            return Err(Error::Parse(format!("leaf labels must be a permutation of 1..{n}")));
        }
        let (w, p) = term_weight_parity(t, gens);
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
    }
    Ok(())
}

fn term_weight_parity(t: &Term, gens: &[GeneratorSymbol]) -> (usize, u8) {
    match t {
        Term::Leaf(_) => (0, 0),
        Term::Node(g, cs) => cs.iter().fold((gens[*g].weight, gens[*g].parity), |(w, p), c| {
            let (a, b) = term_weight_parity(c, gens);
            (w + a, p ^ b)
        }),
    }
}

/// Functional text of a written term.
pub fn term_text(t: &Term, gens: &[GeneratorSymbol]) -> String {
    match t {
        Term::Leaf(l) => l.to_string(),
        Term::Node(g, cs) => {
            let kids: Vec<String> = cs.iter().map(|c| term_text(c, gens)).collect();
            format!("{}({})", gens[*g].id, kids.join(","))
        }
    }
}

pub fn written_text(w: &WrittenPolynomial, gens: &[GeneratorSymbol]) -> String {
    format_combination(w.terms.iter().map(|(c, t)| (c.clone(), term_text(t, gens))))
}

fn action_text(a: &SymmetricAction, gens: &[GeneratorSymbol]) -> String {
    match a {
        SymmetricAction::Sign(s) => format!("sign({})", if *s < 0 { "-1" } else { "+1" }),
        SymmetricAction::Table(t) => {
            let parts: Vec<String> = t
                .iter()
                .map(|(h, s)| format!("{}{}", if *s < 0 { '-' } else { '+' }, gens[*h].id))
                .collect();
            format!("table({})", parts.join(","))
        }
    }
}

/// Serializes a presentation in the file grammar.
pub fn serialize_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("operad {}\n", p.name));
    out.push_str(&format!("kind {}\n", p.kind.name()));
    for (g, a) in p.gens.iter().zip(&p.actions) {
        out.push_str(&format!("generator {} arity {} degree {}", g.id, g.arity, g.parity));
        if g.weight != 1 {
            out.push_str(&format!(" weight {}", g.weight));
        }
        if let Some(a) = a {
            out.push_str(&format!(" action {}", action_text(a, &p.gens)));
        }
        out.push('\n');
    }
    out.push_str(&format!("order {}\n", p.order.name()));
    for r in &p.relations {
        out.push_str(&format!("relation {}\n", written_text(r, &p.gens)));
    }
    out
}

/// Valid operad names are identifiers optionally followed by `:part`s.
pub fn valid_name(s: &str) -> bool {
    let mut parts = s.split(':');
    parts.next().is_some_and(is_ident) && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_alphanumeric()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    const LIE: &str = "\
# the Lie operad
operad lie
kind symmetric
generator b arity 2 degree 0 action sign(-1)
relation b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)
";

    #[test]
    fn parses_and_round_trips() {
        let p = parse_presentation(LIE).unwrap();
        assert_eq!(p.name, "lie");
        assert_eq!(p.actions[0], Some(SymmetricAction::Sign(-1)));
        assert_eq!(p.relations[0].terms.len(), 3);
        let again = parse_presentation(&serialize_presentation(&p)).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn coefficients_and_equations() {
        let b = vec![GeneratorSymbol::new("b", 2, 0, 1).unwrap()];
        let w = parse_combination("2 * b(b(1,2),3) - 1/3 b(1,b(2,3)) = -b(b(1,3),2)", &b).unwrap();
        let cs: Vec<Rational> = w.terms.iter().map(|x| x.0.clone()).collect();
        assert_eq!(cs, vec![rat(2), ratio(-1, 3), rat(1)]);
        let u = parse_combination("1", &b).unwrap();
        assert_eq!(u.terms, vec![(rat(1), Term::Leaf(1))]);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "kind shuffle\ngenerator b arity 2 degree 0\nrelation b(b(1,2),3) - c(1,2,3)\n";
        match parse_presentation(bad) {
            Err(Error::Syntax { line, column, message }) => {
                assert_eq!((line, column), (3, 24));
                assert!(message.contains("unknown generator"));
            }
            other => panic!("{other:?}"),
        }
        let mixed = "kind shuffle\ngenerator b arity 2 degree 0\nrelation b(b(1,2),3) - b(1,2)\n";
        let e = parse_presentation(mixed).unwrap_err();
        assert!(e.to_string().contains("inhomogeneous relation"), "{e}");
        let col = "kind shuffle\ngenerator b arity 2 degree 0\nrelation b(1,2,3)\n";
        assert!(matches!(parse_presentation(col), Err(Error::Syntax { line: 3, column: 10, .. })));
        let kw = "kind shuffle\nfoo bar\n";
        assert!(matches!(parse_presentation(kw), Err(Error::Syntax { line: 2, column: 1, .. })));
    }

    #[test]
    fn table_actions() {
        let text = "kind symmetric\ngenerator x arity 2 degree 0 action table(+y)\ngenerator y arity 2 degree 0 action table(+x)\nrelation x(x(1,2),3) - y(y(1,2),3)\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.actions[0], Some(SymmetricAction::Table(vec![(1, 1)])));
        let again = parse_presentation(&serialize_presentation(&p)).unwrap();
        assert_eq!(again, p);
    }
}
