//! A small text language for naming permutation groups, used by the CLI,
//! the catalogs, and the result cache.
//!
//! Atoms name standard families with their standard actions:
//!
//! * `cyclic:6` — C₆ on 6 points (regular)
//! * `dihedral:4` — dihedral of order 8 on 4 points (natural)
//! * `quaternion:8` — generalized quaternion of *order* 8, regular; the
//!   order must be a power of 2 and at least 8
//! * `sym:4`, `alt:4` — natural actions
//! * `elab:2:3` — elementary abelian C₂³, regular on 8 points
//! * `perm:5:[(0 1 2),(0 1)(3 4)]` — explicit generators on a stated degree
//!
//! Combinators build bigger actions, left-associatively, with parentheses
//! for grouping: `A x B @disjoint` (disjoint union of the point sets),
//! `A x B @product` (coordinatewise on the Cartesian product) and `A wr B`
//! (imprimitive wreath). Parsing then printing yields a canonical form:
//! whitespace is normalized, generators are rewritten in disjoint-cycle
//! form, and redundant parentheses are dropped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constructions::{
    disjoint_direct_product, elementary_abelian_regular, imprimitive_wreath,
    product_action_direct_product, ActionKind, ActionLabel,
};
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEGREE_CAP};
use crate::perm::Perm;
use crate::structure::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    /// Generalized quaternion group of the given order (a power of 2, ≥ 8).
    Quaternion(usize),
    Sym(usize),
    Alt(usize),
    ElementaryAbelian(u64, u32),
    Explicit { degree: usize, gens: Vec<Perm> },
    Disjoint(Box<GroupSpec>, Box<GroupSpec>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Wreath(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let spec = parser.expr()?;
        match parser.peek() {
            None => Ok(spec),
            Some(tok) => Err(Error::ParseError(format!("unexpected {tok} after a complete spec"))),
        }
    }

    /// Degree of the action this spec names, checked against the cap before
    /// anything is built.
    pub fn degree(&self) -> Result<usize> {
        let d = self.degree_unchecked();
        if d == 0 || d > DEGREE_CAP as u128 {
            return Err(Error::DegreeCapExceeded {
                degree: d.min(usize::MAX as u128) as usize,
                cap: DEGREE_CAP,
            });
        }
        Ok(d as usize)
    }

    fn degree_unchecked(&self) -> u128 {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) | GroupSpec::Sym(n)
            | GroupSpec::Alt(n) | GroupSpec::Quaternion(n) => *n as u128,
            GroupSpec::ElementaryAbelian(p, k) => {
                (*p as u128).checked_pow(*k).unwrap_or(u128::MAX)
            }
            GroupSpec::Explicit { degree, .. } => *degree as u128,
            GroupSpec::Disjoint(a, b) => {
                a.degree_unchecked().saturating_add(b.degree_unchecked())
            }
            GroupSpec::Product(a, b) | GroupSpec::Wreath(a, b) => {
                a.degree_unchecked().saturating_mul(b.degree_unchecked())
            }
        }
    }

    /// How the action is assembled, with its degree arithmetic re-checked.
    pub fn action_label(&self) -> Result<ActionLabel> {
        let degree = self.degree()?;
        let kind = match self {
            GroupSpec::Disjoint(a, b) => ActionKind::DisjointUnion {
                parts: vec![a.degree()?, b.degree()?],
            },
            GroupSpec::Product(a, b) => ActionKind::Product {
                parts: vec![a.degree()?, b.degree()?],
            },
            GroupSpec::Wreath(a, b) => ActionKind::WreathImprimitive {
                base: a.degree()?,
                top: b.degree()?,
            },
            _ => ActionKind::Natural,
        };
        ActionLabel::new(kind, degree)
    }

    /// Builds the named permutation group in its standard action.
    pub fn materialize(&self) -> Result<PermGroup> {
        self.degree()?;
        match self {
            GroupSpec::Cyclic(n) => Ok(PermGroup::cyclic(*n)),
            GroupSpec::Dihedral(n) => PermGroup::dihedral(*n),
            GroupSpec::Quaternion(order) => PermGroup::dicyclic(order / 4),
            GroupSpec::Sym(n) => Ok(PermGroup::symmetric(*n)),
            GroupSpec::Alt(n) => Ok(PermGroup::alternating(*n)),
            GroupSpec::ElementaryAbelian(p, k) => elementary_abelian_regular(*p, *k),
            GroupSpec::Explicit { degree, gens } => PermGroup::new(*degree, gens.clone()),
            GroupSpec::Disjoint(a, b) => {
                disjoint_direct_product(&a.materialize()?, &b.materialize()?)
            }
            GroupSpec::Product(a, b) => {
                product_action_direct_product(&a.materialize()?, &b.materialize()?)
            }
            GroupSpec::Wreath(a, b) => imprimitive_wreath(&a.materialize()?, &b.materialize()?),
        }
    }

    pub fn materialize_labeled(&self) -> Result<(PermGroup, ActionLabel)> {
        Ok((self.materialize()?, self.action_label()?))
    }

    fn is_composite(&self) -> bool {
        matches!(
            self,
            GroupSpec::Disjoint(..) | GroupSpec::Product(..) | GroupSpec::Wreath(..)
        )
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion:{n}"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::ElementaryAbelian(p, k) => write!(f, "elab:{p}:{k}"),
            GroupSpec::Explicit { degree, gens } => {
                write!(f, "perm:{degree}:[")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "]")
            }
            GroupSpec::Disjoint(a, b) => {
                write_operand(f, a)?;
                write!(f, " x ")?;
                write_operand_parenthesized(f, b)?;
                write!(f, " @disjoint")
            }
            GroupSpec::Product(a, b) => {
                write_operand(f, a)?;
                write!(f, " x ")?;
                write_operand_parenthesized(f, b)?;
                write!(f, " @product")
            }
            GroupSpec::Wreath(a, b) => {
                write_operand(f, a)?;
                write!(f, " wr ")?;
                write_operand_parenthesized(f, b)
            }
        }
    }
}

// Left operands never need parentheses (operators associate left); right
// operands do whenever they are themselves composite.
fn write_operand(f: &mut fmt::Formatter<'_>, s: &GroupSpec) -> fmt::Result {
    write!(f, "{s}")
}

fn write_operand_parenthesized(f: &mut fmt::Formatter<'_>, s: &GroupSpec) -> fmt::Result {
    if s.is_composite() {
        write!(f, "({s})")
    } else {
        write!(f, "{s}")
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        GroupSpec::parse(s)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        GroupSpec::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    LParen,
    RParen,
    /// `@disjoint`, `@product`.
    Tag(String),
    /// An atom (`cyclic:6`, `perm:5:[...]`) or an operator (`x`, `wr`).
    Word(String),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::LParen => write!(f, "'('"),
            Token::RParen => write!(f, "')'"),
            Token::Tag(t) => write!(f, "'@{t}'"),
            Token::Word(w) => write!(f, "'{w}'"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            tokens.push(Token::LParen);
            i += 1;
        } else if c == ')' {
            tokens.push(Token::RParen);
            i += 1;
        } else if c == '@' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            if start == i {
                return Err(Error::ParseError("'@' must be followed by a tag name".into()));
            }
            tokens.push(Token::Tag(chars[start..i].iter().collect()));
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            // Atoms may carry `:param` suffixes; a parameter opening with
            // `[` runs to the matching `]` and may contain anything, which
            // is how explicit generator lists smuggle parentheses past the
            // grouping syntax.
            while i < chars.len() && chars[i] == ':' {
                i += 1;
                if i < chars.len() && chars[i] == '[' {
                    let mut depth = 0;
                    loop {
                        if i == chars.len() {
                            return Err(Error::ParseError(format!(
                                "unterminated '[' in {:?}",
                                chars[start..].iter().collect::<String>()
                            )));
                        }
                        match chars[i] {
                            '[' => depth += 1,
                            ']' => {
                                depth -= 1;
                                if depth == 0 {
                                    i += 1;
                                    break;
                                }
                            }
                            _ => {}
                        }
                        i += 1;
                    }
                } else {
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                }
            }
            tokens.push(Token::Word(chars[start..i].iter().collect()));
        } else {
            return Err(Error::ParseError(format!("unexpected character {c:?}")));
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let tok = self.tokens.get(self.pos);
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn expr(&mut self) -> Result<GroupSpec> {
        let mut left = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Word(w)) if w == "x" => {
                    self.pos += 1;
                    let right = self.term()?;
                    let tag = match self.next() {
                        Some(Token::Tag(t)) => t.clone(),
                        _ => {
                            return Err(Error::ParseError(
                                "'x' needs a trailing @disjoint or @product tag".into(),
                            ))
                        }
                    };
                    left = match tag.as_str() {
                        "disjoint" => GroupSpec::Disjoint(Box::new(left), Box::new(right)),
                        "product" => GroupSpec::Product(Box::new(left), Box::new(right)),
                        other => {
                            return Err(Error::ParseError(format!(
                                "unknown product tag '@{other}' (expected @disjoint or @product)"
                            )))
                        }
                    };
                }
                Some(Token::Word(w)) if w == "wr" => {
                    self.pos += 1;
                    let right = self.term()?;
                    left = GroupSpec::Wreath(Box::new(left), Box::new(right));
                }
                _ => return Ok(left),
            }
        }
    }

    fn term(&mut self) -> Result<GroupSpec> {
        match self.next() {
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    Some(tok) => Err(Error::ParseError(format!("expected ')', found {tok}"))),
                    None => Err(Error::ParseError("unclosed '('".into())),
                }
            }
            Some(Token::Word(w)) if w != "x" && w != "wr" => parse_atom(&w.clone()),
            Some(tok) => Err(Error::ParseError(format!("expected a group spec, found {tok}"))),
            None => Err(Error::ParseError("expected a group spec, found end of input".into())),
        }
    }
}

fn parse_atom(raw: &str) -> Result<GroupSpec> {
    let (family, rest) = match raw.split_once(':') {
        Some((f, r)) => (f, r),
        None => return Err(Error::UnknownFamily(raw.to_string())),
    };
    match family {
        "cyclic" => {
            let n = parse_count(raw, rest)?;
            Ok(GroupSpec::Cyclic(n))
        }
        "dihedral" => {
            let n = parse_count(raw, rest)?;
            if n < 3 {
                return Err(Error::BadParameter(format!(
                    "dihedral:{n} — the dihedral family starts at dihedral:3 (order 6)"
                )));
            }
            Ok(GroupSpec::Dihedral(n))
        }
        "quaternion" => {
            let n = parse_count(raw, rest)?;
            if n < 8 || !n.is_power_of_two() {
                return Err(Error::BadParameter(format!(
                    "quaternion:{n} — the order must be a power of 2 and at least 8"
                )));
            }
            Ok(GroupSpec::Quaternion(n))
        }
        "sym" => Ok(GroupSpec::Sym(parse_count(raw, rest)?)),
        "alt" => Ok(GroupSpec::Alt(parse_count(raw, rest)?)),
        "elab" => {
            let (p_text, k_text) = rest.split_once(':').ok_or_else(|| {
                Error::ParseError(format!("'{raw}' — elab takes two parameters, elab:p:k"))
            })?;
            let p: u64 = p_text
                .parse()
                .map_err(|_| Error::ParseError(format!("'{p_text}' is not a number")))?;
            let k: u32 = k_text
                .parse()
                .map_err(|_| Error::ParseError(format!("'{k_text}' is not a number")))?;
            if !is_prime(p) {
                return Err(Error::BadParameter(format!("elab:{p}:{k} — {p} is not prime")));
            }
            if k == 0 {
                return Err(Error::BadParameter(format!("elab:{p}:{k} — the rank must be positive")));
            }
            Ok(GroupSpec::ElementaryAbelian(p, k))
        }
        "perm" => {
            let (deg_text, gen_text) = rest.split_once(':').ok_or_else(|| {
                Error::ParseError(format!("'{raw}' — perm takes a degree and a generator list"))
            })?;
            let degree: usize = deg_text
                .parse()
                .map_err(|_| Error::ParseError(format!("'{deg_text}' is not a degree")))?;
            if degree == 0 {
                return Err(Error::BadParameter("perm degree must be positive".into()));
            }
            let inner = gen_text
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| {
                    Error::ParseError(format!("'{gen_text}' — generators go in [brackets]"))
                })?;
            let mut gens = Vec::new();
            // Commas separate generators; they cannot occur inside a cycle,
            // whose points are space-separated.
            for piece in inner.split(',') {
                let piece = piece.trim();
                if piece.is_empty() {
                    continue;
                }
                gens.push(Perm::parse(piece, degree)?);
            }
            Ok(GroupSpec::Explicit { degree, gens })
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

fn parse_count(raw: &str, text: &str) -> Result<usize> {
    let n: usize = text
        .parse()
        .map_err(|_| Error::ParseError(format!("'{raw}' — '{text}' is not a number")))?;
    if n == 0 {
        return Err(Error::BadParameter(format!("'{raw}' — the parameter must be positive")));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(text: &str) -> GroupSpec {
        GroupSpec::parse(text).unwrap()
    }

    #[test]
    fn cyclic_four_is_the_four_cycle() {
        let g = spec("cyclic:4").materialize().unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.generators(), &[Perm::parse("(0 1 2 3)", 4).unwrap()]);
        assert_eq!(g.order().unwrap(), 4);
    }

    #[test]
    fn quaternion_eight_is_regular_with_a_unique_involution() {
        let g = spec("quaternion:8").materialize().unwrap();
        assert_eq!(g.degree(), 8);
        assert_eq!(g.order().unwrap(), 8);
        assert!(g.is_transitive());
        assert_eq!(g.point_stabilizer(0).unwrap().order().unwrap(), 1);
        let involutions = g
            .elements()
            .unwrap()
            .iter()
            .filter(|e| e.order() == 2)
            .count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn disjoint_product_example() {
        let g = spec("sym:3 x cyclic:2 @disjoint").materialize().unwrap();
        assert_eq!(g.degree(), 5);
        assert_eq!(g.order().unwrap(), 12);
        let mut gens: Vec<String> = g.generators().iter().map(|p| p.to_string()).collect();
        gens.sort();
        assert_eq!(gens, vec!["(0 1 2)", "(0 1)", "(3 4)"]);
    }

    #[test]
    fn families_match_their_direct_constructions() {
        assert!(spec("dihedral:4")
            .materialize()
            .unwrap()
            .equals(&PermGroup::dihedral(4).unwrap())
            .unwrap());
        assert!(spec("elab:2:2")
            .materialize()
            .unwrap()
            .equals(&elementary_abelian_regular(2, 2).unwrap())
            .unwrap());
        assert_eq!(spec("sym:4").materialize().unwrap().order().unwrap(), 24);
        assert_eq!(spec("alt:4").materialize().unwrap().order().unwrap(), 12);
        assert_eq!(spec("quaternion:16").materialize().unwrap().order().unwrap(), 16);
        assert_eq!(spec("cyclic:1").materialize().unwrap().order().unwrap(), 1);
    }

    #[test]
    fn explicit_perm_atom_builds_the_stated_group() {
        let g = spec("perm:5:[(0 1 2),(0 1)(3 4)]").materialize().unwrap();
        assert_eq!(g.degree(), 5);
        // ⟨(0 1 2),(0 1)(3 4)⟩: the first two gens generate S3 on {0,1,2}
        // tied to the swap on {3,4}; its order is lcm-driven: elements are
        // (σ, τ) with τ determined by sgn σ, so 6 elements on {0..2} times
        // the sign joint gives order 6.
        assert_eq!(g.order().unwrap(), 6);
    }

    #[test]
    fn wreath_combinator_degree_and_order() {
        let g = spec("cyclic:3 wr sym:2").materialize().unwrap();
        assert_eq!(g.degree(), 6);
        // |C3 ≀ C2| = |C3|² · |C2|.
        assert_eq!(g.order().unwrap(), 18);
        let label = spec("cyclic:3 wr sym:2").action_label().unwrap();
        assert_eq!(label.kind, ActionKind::WreathImprimitive { base: 3, top: 2 });
        assert_eq!(label.degree, 6);
    }

    #[test]
    fn product_combinator_needs_transitive_factors() {
        let g = spec("cyclic:2 x cyclic:3 @product").materialize().unwrap();
        assert_eq!(g.degree(), 6);
        assert_eq!(g.order().unwrap(), 6);
        let intransitive = spec("perm:3:[(0 1)] x cyclic:2 @product");
        assert!(matches!(intransitive.materialize(), Err(Error::NotTransitive)));
    }

    #[test]
    fn printing_is_canonical_and_reparses() {
        let cases = [
            ("  cyclic:6  ", "cyclic:6"),
            ("sym:3 x cyclic:2 @disjoint", "sym:3 x cyclic:2 @disjoint"),
            // Redundant parentheses around the left operand disappear.
            ("(sym:3 x cyclic:2 @disjoint) x alt:4 @product", "sym:3 x cyclic:2 @disjoint x alt:4 @product"),
            // Necessary parentheses around the right operand stay.
            ("cyclic:2 wr (cyclic:3 x cyclic:4 @product)", "cyclic:2 wr (cyclic:3 x cyclic:4 @product)"),
            // Generators are rewritten in disjoint-cycle form.
            ("perm:5:[(2 0 1),(0 1)(3 4)]", "perm:5:[(0 1 2),(0 1)(3 4)]"),
            ("perm:3:[]", "perm:3:[]"),
            ("cyclic:3 wr sym:2 wr sym:2", "cyclic:3 wr sym:2 wr sym:2"),
        ];
        for (input, canonical) in cases {
            let parsed = spec(input);
            assert_eq!(parsed.to_string(), canonical, "input {input:?}");
            assert_eq!(spec(canonical), parsed, "reparse of {canonical:?}");
        }
    }

    #[test]
    fn operators_associate_left() {
        let flat = spec("cyclic:2 x cyclic:3 @disjoint x cyclic:5 @disjoint");
        let grouped = spec("(cyclic:2 x cyclic:3 @disjoint) x cyclic:5 @disjoint");
        assert_eq!(flat, grouped);
        let other = spec("cyclic:2 x (cyclic:3 x cyclic:5 @disjoint) @disjoint");
        assert_ne!(flat, other);
        // Both orders build the same degree-10 group; the split differs.
        assert_eq!(flat.degree().unwrap(), 10);
        assert_eq!(other.degree().unwrap(), 10);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        for text in [
            "quaternion:12",
            "quaternion:4",
            "quaternion:7",
            "dihedral:2",
            "elab:4:2",
            "elab:3:0",
            "cyclic:0",
            "perm:0:[]",
        ] {
            assert!(
                matches!(GroupSpec::parse(text), Err(Error::BadParameter(_))),
                "{text} should be a bad parameter"
            );
        }
    }

    #[test]
    fn unknown_families_and_malformed_text_are_distinguished() {
        assert!(matches!(
            GroupSpec::parse("frobnitz:5"),
            Err(Error::UnknownFamily(f)) if f == "frobnitz"
        ));
        assert!(matches!(
            GroupSpec::parse("cyclic"),
            Err(Error::UnknownFamily(_))
        ));
        for text in [
            "cyclic:x",
            "sym:3 x cyclic:2",           // missing tag
            "sym:3 x cyclic:2 @weird",    // unknown tag
            "sym:3 x cyclic:2 @disjoint)",
            "(sym:3 x cyclic:2 @disjoint",
            "sym:3 cyclic:2",
            "x cyclic:2",
            "perm:3:[(0 1 2)",
            "elab:2",
            "@disjoint",
            "",
        ] {
            assert!(
                matches!(GroupSpec::parse(text), Err(Error::ParseError(_))),
                "{text:?} should be a parse error"
            );
        }
        assert!(matches!(
            GroupSpec::parse("perm:3:[(0 1 2]"),
            Err(Error::MalformedCycleText(_))
        ));
        assert!(matches!(
            GroupSpec::parse("perm:2:[(0 3)]"),
            Err(Error::PointOutOfRange { point: 3, degree: 2 })
        ));
    }

    #[test]
    fn degree_caps_apply_before_building() {
        assert!(matches!(
            spec("sym:65").materialize(),
            Err(Error::DegreeCapExceeded { degree: 65, cap: 64 })
        ));
        assert!(matches!(
            spec("cyclic:10 x cyclic:10 @product").materialize(),
            Err(Error::DegreeCapExceeded { degree: 100, cap: 64 })
        ));
        assert!(matches!(
            spec("sym:9 wr sym:8").materialize(),
            Err(Error::DegreeCapExceeded { degree: 72, cap: 64 })
        ));
        assert_eq!(spec("sym:64").degree().unwrap(), 64);
        assert_eq!(spec("sym:8 wr sym:8").degree().unwrap(), 64);
    }

    #[test]
    fn labels_match_materialized_degrees() {
        for text in [
            "cyclic:6",
            "quaternion:8",
            "elab:3:2",
            "sym:3 x cyclic:2 @disjoint",
            "cyclic:2 x cyclic:3 @product",
            "cyclic:3 wr sym:2",
            "perm:5:[(0 1 2),(0 1)(3 4)]",
        ] {
            let s = spec(text);
            let (g, label) = s.materialize_labeled().unwrap();
            assert_eq!(g.degree(), label.degree, "{text}");
            assert_eq!(label.degree, s.degree().unwrap(), "{text}");
        }
    }

    #[test]
    fn serde_uses_the_canonical_text_form() {
        let s = spec("sym:3 x (cyclic:2 wr cyclic:2) @disjoint");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"sym:3 x (cyclic:2 wr cyclic:2) @disjoint\"");
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<GroupSpec>("\"nonsense:1\"").is_err());
    }

    fn atom_strategy() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1usize..6).prop_map(GroupSpec::Cyclic),
            (3usize..6).prop_map(GroupSpec::Dihedral),
            Just(GroupSpec::Quaternion(8)),
            (1usize..5).prop_map(GroupSpec::Sym),
            (3usize..5).prop_map(GroupSpec::Alt),
            Just(GroupSpec::ElementaryAbelian(2, 2)),
            Just(GroupSpec::Explicit {
                degree: 4,
                gens: vec![
                    Perm::parse("(0 1 2 3)", 4).unwrap(),
                    Perm::parse("(0 2)", 4).unwrap(),
                ],
            }),
        ]
    }

    fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
        atom_strategy().prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| GroupSpec::Disjoint(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b))),
                (inner.clone(), inner)
                    .prop_map(|(a, b)| GroupSpec::Wreath(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        // Printing any spec tree and reparsing it reproduces the tree, and
        // the printed form is a fixed point of parse-then-print.
        #[test]
        fn prop_print_parse_round_trip(s in spec_strategy()) {
            let text = s.to_string();
            let reparsed = GroupSpec::parse(&text).unwrap();
            prop_assert_eq!(&reparsed, &s);
            prop_assert_eq!(reparsed.to_string(), text);
        }
    }
}
