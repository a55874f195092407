use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::simplicial::{
    circle, point, product, simplex_sphere, smash, sphere, suspension, torus, wedge, PointedSimplicialSet,
};

/// A space written in the expression grammar
///
/// ```text
/// e := pt | S1 | sphere(n) | simplexsphere(n) | torus(n)
///    | wedge(e,e) | prod(e,e) | smash(e,e) | susp(e)
/// ```
///
/// Whitespace between tokens is ignored; names are case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceExpr {
    Pt,
    S1,
    Sphere(usize),
    SimplexSphere(usize),
    Torus(usize),
    Wedge(Box<SpaceExpr>, Box<SpaceExpr>),
    Prod(Box<SpaceExpr>, Box<SpaceExpr>),
    Smash(Box<SpaceExpr>, Box<SpaceExpr>),
    Susp(Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn wedge(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Wedge(Box::new(a), Box::new(b))
    }

    pub fn prod(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Prod(Box::new(a), Box::new(b))
    }

    pub fn smash(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Smash(Box::new(a), Box::new(b))
    }

    pub fn susp(a: SpaceExpr) -> Self {
        SpaceExpr::Susp(Box::new(a))
    }

    /// Number of combinator nodes.
    pub fn combinators(&self) -> usize {
        match self {
            SpaceExpr::Pt
            | SpaceExpr::S1
            | SpaceExpr::Sphere(_)
            | SpaceExpr::SimplexSphere(_)
            | SpaceExpr::Torus(_) => 0,
            SpaceExpr::Susp(a) => 1 + a.combinators(),
            SpaceExpr::Wedge(a, b) | SpaceExpr::Prod(a, b) | SpaceExpr::Smash(a, b) => {
                1 + a.combinators() + b.combinators()
            }
        }
    }

    pub fn build(&self, top_level: usize) -> Result<PointedSimplicialSet> {
        build_space(self, top_level)
    }
}

/// Evaluates an expression into level tables truncated at `top_level`.
pub fn build_space(e: &SpaceExpr, top_level: usize) -> Result<PointedSimplicialSet> {
    let positive = |n: usize, what: &str| {
        if n == 0 {
            Err(Error::MalformedExpr(format!("{what}(0): n must be at least 1")))
        } else {
            Ok(n)
        }
    };
    Ok(match e {
        SpaceExpr::Pt => point(top_level),
        SpaceExpr::S1 => circle(top_level),
        SpaceExpr::Sphere(n) => sphere(positive(*n, "sphere")?, top_level),
        SpaceExpr::SimplexSphere(n) => simplex_sphere(positive(*n, "simplexsphere")?, top_level),
        SpaceExpr::Torus(n) => torus(positive(*n, "torus")?, top_level),
        SpaceExpr::Wedge(a, b) => wedge(&build_space(a, top_level)?, &build_space(b, top_level)?)?,
        SpaceExpr::Prod(a, b) => product(&build_space(a, top_level)?, &build_space(b, top_level)?)?,
        SpaceExpr::Smash(a, b) => smash(&build_space(a, top_level)?, &build_space(b, top_level)?)?,
        SpaceExpr::Susp(a) => suspension(&build_space(a, top_level)?),
    })
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Pt => write!(f, "pt"),
            SpaceExpr::S1 => write!(f, "S1"),
            SpaceExpr::Sphere(n) => write!(f, "sphere({n})"),
            SpaceExpr::SimplexSphere(n) => write!(f, "simplexsphere({n})"),
            SpaceExpr::Torus(n) => write!(f, "torus({n})"),
            SpaceExpr::Wedge(a, b) => write!(f, "wedge({a},{b})"),
            SpaceExpr::Prod(a, b) => write!(f, "prod({a},{b})"),
            SpaceExpr::Smash(a, b) => write!(f, "smash({a},{b})"),
            SpaceExpr::Susp(a) => write!(f, "susp({a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(usize),
    Open,
    Close,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            ',' => {
                chars.next();
                out.push(Token::Comma);
            }
            c if c.is_ascii_alphabetic() => {
                let mut id = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric()) {
                    id.push(c);
                    chars.next();
                }
                out.push(Token::Ident(id));
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    digits.push(c);
                    chars.next();
                }
                let n = digits
                    .parse()
                    .map_err(|_| Error::MalformedExpr(format!("number `{digits}` too large")))?;
                out.push(Token::Number(n));
            }
            other => return Err(Error::MalformedExpr(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(Error::MalformedExpr(format!("expected {want:?}, found {t:?}"))),
            None => Err(Error::MalformedExpr(format!("expected {want:?}, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.expect(Token::Open)?;
        let n = match self.next() {
            Some(Token::Number(n)) if n >= 1 => n,
            Some(Token::Number(_)) => return Err(Error::MalformedExpr("dimension must be at least 1".into())),
            other => return Err(Error::MalformedExpr(format!("expected a number, found {other:?}"))),
        };
        self.expect(Token::Close)?;
        Ok(n)
    }

    fn args(&mut self, arity: usize, name: &str) -> Result<Vec<SpaceExpr>> {
        self.expect(Token::Open)?;
        let mut out = vec![self.expr()?];
        while self.tokens.get(self.pos) == Some(&Token::Comma) {
            self.pos += 1;
            out.push(self.expr()?);
        }
        self.expect(Token::Close)?;
        if out.len() != arity {
            return Err(Error::MalformedExpr(format!(
                "{name} takes {arity} argument(s), got {}",
                out.len()
            )));
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<SpaceExpr> {
        let name = match self.next() {
            Some(Token::Ident(name)) => name,
            other => return Err(Error::MalformedExpr(format!("expected a space, found {other:?}"))),
        };
        let binary = |p: &mut Parser, build: fn(SpaceExpr, SpaceExpr) -> SpaceExpr| -> Result<SpaceExpr> {
            let mut a = p.args(2, &name)?;
            let b = a.pop().expect("two args");
            let a = a.pop().expect("two args");
            Ok(build(a, b))
        };
        match name.as_str() {
            "pt" => Ok(SpaceExpr::Pt),
            "S1" => Ok(SpaceExpr::S1),
            "sphere" => Ok(SpaceExpr::Sphere(self.number()?)),
            "simplexsphere" => Ok(SpaceExpr::SimplexSphere(self.number()?)),
            "torus" => Ok(SpaceExpr::Torus(self.number()?)),
            "wedge" => binary(self, SpaceExpr::wedge),
            "prod" => binary(self, SpaceExpr::prod),
            "smash" => binary(self, SpaceExpr::smash),
            "susp" => {
                let mut a = self.args(1, "susp")?;
                Ok(SpaceExpr::susp(a.pop().expect("one arg")))
            }
            other => Err(Error::MalformedExpr(format!("unknown space `{other}`"))),
        }
    }
}

impl FromStr for SpaceExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            tokens: tokenize(s)?,
            pos: 0,
        };
        let e = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::MalformedExpr(format!("trailing input in `{s}`")));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::validate;
    use proptest::prelude::*;

    fn sizes(e: &str, top: usize) -> Vec<usize> {
        build_space(&e.parse().unwrap(), top).unwrap().level_sizes()
    }

    #[test]
    fn build_examples() {
        assert_eq!(sizes("prod(S1,S1)", 3), vec![1, 4, 9, 16]);
        // S1 ∨ S1 has 2p + 1 simplices, smash-model S² has [1, 2, 5, 10]
        assert_eq!(sizes("wedge(wedge(S1,S1),sphere(2))", 3), vec![1, 4, 9, 16]);
        assert_eq!(build_space(&"torus(1)".parse().unwrap(), 2).unwrap(), circle(2));
    }

    #[test]
    fn parse_and_print() {
        let e: SpaceExpr = " wedge( S1 ,\tsmash(pt, sphere( 2 ) ) ) ".parse().unwrap();
        assert_eq!(e.to_string(), "wedge(S1,smash(pt,sphere(2)))");
        assert_eq!(e.combinators(), 2);
    }

    #[test]
    fn malformed_expressions() {
        for bad in [
            "s1",
            "wedge(S1)",
            "susp(S1,S1)",
            "sphere(0)",
            "torus()",
            "prod(S1,S1",
            "S1 S1",
            "foo(S1)",
            "",
            "wedge(S1,,S1)",
        ] {
            assert!(
                matches!(bad.parse::<SpaceExpr>(), Err(Error::MalformedExpr(_))),
                "{bad}"
            );
        }
        assert!(build_space(&SpaceExpr::Sphere(0), 2).is_err());
    }

    fn arb_expr() -> impl Strategy<Value = SpaceExpr> {
        let leaf = prop_oneof![
            Just(SpaceExpr::Pt),
            Just(SpaceExpr::S1),
            Just(SpaceExpr::Sphere(2)),
            Just(SpaceExpr::SimplexSphere(2)),
        ];
        leaf.prop_recursive(2, 4, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::wedge(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::prod(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::smash(a, b)),
                inner.prop_map(SpaceExpr::susp),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn display_parses_back(e in arb_expr()) {
            prop_assert_eq!(e.to_string().parse::<SpaceExpr>().unwrap(), e);
        }

        #[test]
        fn constructions_always_validate(e in arb_expr()) {
            let x = build_space(&e, 3).unwrap();
            prop_assert!(validate(&x).passed());
        }

        #[test]
        fn level_size_arithmetic(a in arb_expr(), b in arb_expr()) {
            let x = build_space(&a, 3).unwrap();
            let y = build_space(&b, 3).unwrap();
            let w = build_space(&SpaceExpr::wedge(a.clone(), b.clone()), 3).unwrap();
            let p = build_space(&SpaceExpr::prod(a.clone(), b.clone()), 3).unwrap();
            let s = build_space(&SpaceExpr::smash(a, b), 3).unwrap();
            for l in 0..=3 {
                let (nx, ny) = (x.size(l), y.size(l));
                prop_assert_eq!(w.size(l), nx + ny - 1);
                prop_assert_eq!(p.size(l), nx * ny);
                prop_assert_eq!(s.size(l), nx * ny + 2 - nx - ny);
            }
        }

        #[test]
        fn nondegenerate_counts_ignore_evaluation_order(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
            let left = SpaceExpr::wedge(SpaceExpr::wedge(a.clone(), b.clone()), c.clone());
            let right = SpaceExpr::wedge(a.clone(), SpaceExpr::wedge(b.clone(), c.clone()));
            prop_assert_eq!(
                build_space(&left, 3).unwrap().nondegenerate_counts(),
                build_space(&right, 3).unwrap().nondegenerate_counts()
            );
            let left = SpaceExpr::smash(SpaceExpr::smash(a.clone(), b.clone()), c.clone());
            let right = SpaceExpr::smash(a, SpaceExpr::smash(b, c));
            prop_assert_eq!(
                build_space(&left, 2).unwrap().nondegenerate_counts(),
                build_space(&right, 2).unwrap().nondegenerate_counts()
            );
        }
    }
}
