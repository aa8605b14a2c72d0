//! Brace-and-arrow notation for finite spaces and maps between them.
//!
//! ```text
//! space  := '{' [chain (',' chain)*] '}'
//! chain  := label (rel label)*
//! rel    := '>' | '<' | '<->' | '='
//! map    := space '->' space
//! label  := [A-Za-z0-9_'~*-]+
//! ```
//!
//! `a>b` puts `b` in the closure of `a`, `a<b` puts `a` in the closure of `b`,
//! `a<->b` does both and `a=b` identifies the two labels. Whitespace is
//! ignored. The arrows `↘ ↙ ↔ ⟶ →` are accepted for `> < <-> -> ->`, `′`
//! for `'` and `‾` for `~`.
//!
//! In a map `A -> B` every point of `A` goes to the point of `B` with the same
//! label. The codomain inherits all points and arrows of the domain, so it
//! only has to list what changes: `{a} -> {b}` is the inclusion of a point
//! into the discrete pair and `{a<U>x<V>b} -> {U=x=V}` glues three points.
//! If the codomain mentions `*` and the domain does not, every domain label
//! the codomain leaves unmentioned is glued onto `*`, so `{a>b} -> {*}` is
//! the map to the one-point space.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::morphism::{check_continuous, ContinuousMap, MapError};
use crate::space::{bits, FiniteSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relator {
    /// `>`: the right label lies in the closure of the left one.
    Down,
    /// `<`: the left label lies in the closure of the right one.
    Up,
    /// `<->`
    Both,
    /// `=`
    Glue,
}

impl Relator {
    pub fn symbol(self) -> &'static str {
        match self {
            Relator::Down => ">",
            Relator::Up => "<",
            Relator::Both => "<->",
            Relator::Glue => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub labels: Vec<String>,
    /// `relators[i]` sits between `labels[i]` and `labels[i + 1]`.
    pub relators: Vec<Relator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpaceExpr {
    pub chains: Vec<Chain>,
}

impl SpaceExpr {
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.chains
            .iter()
            .flat_map(|c| c.labels.iter().map(String::as_str))
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, chain) in self.chains.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&chain.labels[0])?;
            for (rel, label) in chain.relators.iter().zip(&chain.labels[1..]) {
                f.write_str(rel.symbol())?;
                f.write_str(label)?;
            }
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapExpr {
    pub domain: SpaceExpr,
    pub codomain: SpaceExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Comma,
    Rel(Relator),
    MapsTo,
    Label(String),
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '~' | '*' | '-')
}

fn normalize(c: char) -> char {
    match c {
        '′' => '\'',
        '‾' => '~',
        other => other,
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().map(normalize).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '{' => Token::Open,
            '}' => Token::Close,
            ',' => Token::Comma,
            '>' | '↘' => Token::Rel(Relator::Down),
            '↙' => Token::Rel(Relator::Up),
            '↔' => Token::Rel(Relator::Both),
            '=' => Token::Rel(Relator::Glue),
            '⟶' | '→' => Token::MapsTo,
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    i += 2;
                    Token::Rel(Relator::Both)
                } else {
                    Token::Rel(Relator::Up)
                }
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::MapsTo
            }
            c if is_label_char(c) => {
                let mut label = String::new();
                while i < chars.len() && is_label_char(chars[i]) {
                    if chars[i] == '-' && chars.get(i + 1) == Some(&'>') {
                        break;
                    }
                    label.push(chars[i]);
                    i += 1;
                }
                out.push((start, Token::Label(label)));
                continue;
            }
            other => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Self {
            tokens: tokenize(text)?,
            pos: 0,
            end: text.chars().count(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn label(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Token::Label(l)) => {
                let l = l.clone();
                self.pos += 1;
                Ok(l)
            }
            _ => self.error("expected a point label"),
        }
    }

    fn space(&mut self) -> Result<SpaceExpr, ParseError> {
        self.expect(Token::Open, "`{`")?;
        let mut chains = Vec::new();
        if self.peek() == Some(&Token::Close) {
            self.pos += 1;
            return Ok(SpaceExpr { chains });
        }
        loop {
            chains.push(self.chain()?);
            match self.peek() {
                Some(Token::Comma) => self.pos += 1,
                Some(Token::Close) => {
                    self.pos += 1;
                    return Ok(SpaceExpr { chains });
                }
                _ => return self.error("expected `,` or `}`"),
            }
        }
    }

    fn chain(&mut self) -> Result<Chain, ParseError> {
        let mut labels = vec![self.label()?];
        let mut relators = Vec::new();
        while let Some(Token::Rel(r)) = self.peek() {
            relators.push(*r);
            self.pos += 1;
            labels.push(self.label()?);
        }
        Ok(Chain { labels, relators })
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }
}

pub fn parse_space_expr(text: &str) -> Result<SpaceExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.space()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_map_expr(text: &str) -> Result<MapExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let domain = p.space()?;
    p.expect(Token::MapsTo, "`->`")?;
    let codomain = p.space()?;
    p.finish()?;
    Ok(MapExpr { domain, codomain })
}

/// Accumulates labels, gluings and arrows, then resolves them into a space.
#[derive(Default)]
struct SpaceBuilder {
    names: Vec<String>,
    ids: HashMap<String, usize>,
    parent: Vec<usize>,
    arrows: Vec<(usize, usize)>,
}

impl SpaceBuilder {
    fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.names.len();
        self.names.push(label.to_string());
        self.ids.insert(label.to_string(), id);
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn glue(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the earlier label as representative.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn add(&mut self, expr: &SpaceExpr) {
        for chain in &expr.chains {
            let ids: Vec<usize> = chain.labels.iter().map(|l| self.intern(l)).collect();
            for (i, rel) in chain.relators.iter().enumerate() {
                let (a, b) = (ids[i], ids[i + 1]);
                match rel {
                    Relator::Down => self.arrows.push((a, b)),
                    Relator::Up => self.arrows.push((b, a)),
                    Relator::Both => {
                        self.arrows.push((a, b));
                        self.arrows.push((b, a));
                    }
                    Relator::Glue => self.glue(a, b),
                }
            }
        }
    }

    /// The space plus the point of every interned label.
    fn build(mut self) -> Result<(FiniteSpace, HashMap<String, usize>), SpaceError> {
        let count = self.names.len();
        let mut point_of_root = HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut point = Vec::with_capacity(count);
        for id in 0..count {
            let root = self.find(id);
            let p = *point_of_root.entry(root).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[p].push(id);
            point.push(p);
        }
        let labels = members
            .iter()
            .map(|m| {
                m.iter()
                    .map(|&id| self.names[id].as_str())
                    .collect::<Vec<_>>()
                    .join("=")
            })
            .collect();
        let arrows: Vec<_> = self
            .arrows
            .iter()
            .map(|&(a, b)| (point[a], point[b]))
            .collect();
        let space = FiniteSpace::new(members.len(), &arrows, Some(labels))?;
        let lookup = self
            .names
            .iter()
            .enumerate()
            .map(|(id, name)| (name.clone(), point[id]))
            .collect();
        Ok((space, lookup))
    }
}

fn build_expr(expr: &SpaceExpr) -> Result<(FiniteSpace, HashMap<String, usize>), SpaceError> {
    let mut b = SpaceBuilder::default();
    b.add(expr);
    b.build()
}

pub fn space_from_expr(expr: &SpaceExpr) -> Result<FiniteSpace, SpaceError> {
    build_expr(expr).map(|(s, _)| s)
}

/// Parses a space such as `{a<U>x<V>b}`. Glued labels become one point whose
/// label joins them with `=`.
pub fn parse_space(text: &str) -> Result<FiniteSpace, NotationError> {
    Ok(space_from_expr(&parse_space_expr(text)?)?)
}

pub fn map_from_expr(expr: &MapExpr) -> Result<ContinuousMap, NotationError> {
    let (dom, dom_lookup) = build_expr(&expr.domain)?;
    let mut b = SpaceBuilder::default();
    b.add(&expr.domain);
    b.add(&expr.codomain);
    let cod_labels: HashSet<&str> = expr.codomain.labels().collect();
    let collapse = cod_labels.contains("*") && !dom_lookup.contains_key("*");
    if collapse {
        let star = b.intern("*");
        for label in expr.domain.labels() {
            if !cod_labels.contains(label) {
                let id = b.intern(label);
                b.glue(star, id);
            }
        }
    }
    let (mut cod, cod_lookup) = b.build()?;
    if collapse {
        // The collapsed point keeps the plain name `*`.
        let star = cod_lookup["*"];
        let mut labels = display_labels(&cod);
        labels[star] = "*".to_string();
        cod = cod.with_labels(Some(labels))?;
    }
    let mut images = vec![usize::MAX; dom.len()];
    for (label, &p) in &dom_lookup {
        images[p] = cod_lookup[label];
    }
    Ok(check_continuous(dom, cod, images)?)
}

/// Parses `SPACE -> SPACE` into the label-induced continuous map.
pub fn parse_map(text: &str) -> Result<ContinuousMap, NotationError> {
    map_from_expr(&parse_map_expr(text)?)
}

fn default_label(n: usize, x: usize) -> String {
    if n == 1 {
        "*".to_string()
    } else if n <= 26 {
        ((b'a' + x as u8) as char).to_string()
    } else {
        format!("p{x}")
    }
}

/// Labels used when printing: the space's own labels or `a, b, c, ...`
/// (`*` for an unlabeled one-point space).
pub fn display_labels(space: &FiniteSpace) -> Vec<String> {
    match space.labels() {
        Some(l) => l.to_vec(),
        None => (0..space.len())
            .map(|x| default_label(space.len(), x))
            .collect(),
    }
}

fn format_with_labels(space: &FiniteSpace, labels: &[String]) -> String {
    let n = space.len();
    let arrows = space.reduced_arrows();
    let mut items: Vec<((usize, usize, usize), String)> = Vec::new();
    let mut mentioned = vec![false; n];
    for x in 0..n {
        let class: Vec<usize> = (0..n).filter(|&y| space.indistinguishable(x, y)).collect();
        if class[0] != x {
            continue;
        }
        if class.len() > 1 {
            for &m in &class {
                mentioned[m] = true;
            }
            let chain: Vec<&str> = class.iter().map(|&m| labels[m].as_str()).collect();
            items.push(((x, 0, 0), chain.join("<->")));
        }
    }
    for &(x, y) in &arrows {
        if space.indistinguishable(x, y) {
            continue;
        }
        mentioned[x] = true;
        mentioned[y] = true;
        items.push(((x, 1, y), format!("{}>{}", labels[x], labels[y])));
    }
    for x in 0..n {
        if !mentioned[x] {
            items.push(((x, 2, 0), labels[x].clone()));
        }
    }
    items.sort();
    let body: Vec<String> = items.into_iter().map(|(_, s)| s).collect();
    format!("{{{}}}", body.join(", "))
}

/// Prints a space in notation syntax; parsing the result gives a homeomorphic
/// space with the same labels.
pub fn format_space(space: &FiniteSpace) -> String {
    format_with_labels(space, &display_labels(space))
}

fn label_parts(label: &str) -> impl Iterator<Item = &str> {
    label.split('=')
}

/// Prints a map so that [`parse_map`] reproduces it up to relabeling.
pub fn format_map(map: &ContinuousMap) -> String {
    let dom = map.dom();
    let cod = map.cod();
    let dom_labels = display_labels(dom);
    let mut cod_labels = display_labels(cod);
    let dom_parts: HashSet<&str> = dom_labels.iter().flat_map(|l| label_parts(l)).collect();

    let inherited = |cod_labels: &[String], x: usize| {
        let image_parts: HashSet<&str> = label_parts(&cod_labels[map.image(x)]).collect();
        label_parts(&dom_labels[x]).all(|p| image_parts.contains(p))
    };
    // A codomain label may reuse a domain label only at that point's image.
    let clash = (0..cod.len()).any(|c| {
        label_parts(&cod_labels[c]).any(|p| {
            dom_parts.contains(p)
                && (0..dom.len())
                    .any(|x| label_parts(&dom_labels[x]).any(|q| q == p) && map.image(x) != c)
        })
    });
    if clash {
        let mut taken: HashSet<String> = dom_parts.iter().map(|s| s.to_string()).collect();
        for label in cod_labels.iter_mut() {
            let renamed: Vec<String> = label_parts(label)
                .map(|p| {
                    let mut fresh = format!("{p}'");
                    while taken.contains(&fresh) {
                        fresh.push('\'');
                    }
                    taken.insert(fresh.clone());
                    fresh
                })
                .collect();
            *label = renamed.join("=");
        }
    }
    let mut cod_text = format_with_labels(cod, &cod_labels);
    let glues: Vec<String> = (0..dom.len())
        .filter(|&x| !inherited(&cod_labels, x))
        .map(|x| format!("{}={}", dom_labels[x], cod_labels[map.image(x)]))
        .collect();
    let star_collapse = cod.len() == 1 && cod_labels[0] == "*" && !dom_parts.contains("*");
    if !glues.is_empty() && !star_collapse {
        cod_text.pop();
        if !cod.is_empty() {
            cod_text.push_str(", ");
        }
        cod_text.push_str(&glues.join(", "));
        cod_text.push('}');
    }
    format!("{} -> {}", format_with_labels(dom, &dom_labels), cod_text)
}

/// Machine-readable description of a space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceSummary {
    pub notation: String,
    pub points: Vec<String>,
    pub arrows: Vec<[usize; 2]>,
    pub open_points: Vec<String>,
    pub closed_points: Vec<String>,
}

impl SpaceSummary {
    pub fn new(space: &FiniteSpace) -> Self {
        let labels = display_labels(space);
        let pick = |keep: &dyn Fn(usize) -> bool| -> Vec<String> {
            (0..space.len())
                .filter(|&x| keep(x))
                .map(|x| labels[x].clone())
                .collect()
        };
        Self {
            notation: format_with_labels(space, &labels),
            arrows: space
                .reduced_arrows()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
            open_points: pick(&|x| space.star_row(x) == 1 << x),
            closed_points: pick(&|x| space.closure_row(x) == 1 << x),
            points: labels.clone(),
        }
    }
}

/// Machine-readable description of a map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapSummary {
    pub notation: String,
    pub domain: SpaceSummary,
    pub codomain: SpaceSummary,
    pub images: Vec<usize>,
}

impl MapSummary {
    pub fn new(map: &ContinuousMap) -> Self {
        Self {
            notation: format_map(map),
            domain: SpaceSummary::new(map.dom()),
            codomain: SpaceSummary::new(map.cod()),
            images: map.images().to_vec(),
        }
    }
}

/// Either a space or a map, whichever the text denotes.
#[derive(Debug, Clone)]
pub enum Parsed {
    Space(FiniteSpace),
    Map(ContinuousMap),
}

pub fn parse_any(text: &str) -> Result<Parsed, NotationError> {
    let tokens = tokenize(text)?;
    if tokens.iter().any(|(_, t)| *t == Token::MapsTo) {
        parse_map(text).map(Parsed::Map)
    } else {
        parse_space(text).map(Parsed::Space)
    }
}

/// Points in a bitmask, printed as `{a, b}` with display labels.
pub fn format_subset(space: &FiniteSpace, mask: u64) -> String {
    let labels = display_labels(space);
    let names: Vec<&str> = bits(mask).map(|x| labels[x].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

pub(crate) fn arc_space(text: &str) -> Arc<FiniteSpace> {
    Arc::new(parse_space(text).unwrap_or_else(|e| panic!("built-in space `{text}`: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SubsetMask;

    fn opens(space: &FiniteSpace) -> Vec<String> {
        SpaceSummary::new(space).open_points
    }

    fn closeds(space: &FiniteSpace) -> Vec<String> {
        SpaceSummary::new(space).closed_points
    }

    #[test]
    fn sierpinski() {
        let s = parse_space("{a>b}").unwrap();
        assert_eq!(s, FiniteSpace::sierpinski());
        assert_eq!(opens(&s), ["a"]);
        assert_eq!(closeds(&s), ["b"]);
    }

    #[test]
    fn antidiscrete_and_discrete_pairs() {
        let s = parse_space("{x<->y}").unwrap();
        assert!(s.indistinguishable(0, 1));
        let d = parse_space("{a,b}").unwrap();
        assert!(d.is_discrete() && d.len() == 2);
    }

    #[test]
    fn zigzag_five_points() {
        let s = parse_space("{a<U>x<V>b}").unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(opens(&s), ["U", "V"]);
        assert_eq!(closeds(&s), ["a", "x", "b"]);
        let open_sets: Vec<Vec<usize>> = s
            .open_sets()
            .map(|m| m.iter().collect())
            .filter(|v: &Vec<usize>| v.len() <= 2)
            .collect();
        // a = 0, U = 1, x = 2, V = 3, b = 4
        assert_eq!(
            open_sets,
            vec![vec![], vec![1], vec![0, 1], vec![3], vec![1, 3], vec![3, 4]]
        );
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(
            parse_space("{a↙U↘x↙V↘b}").unwrap(),
            parse_space("{a<U>x<V>b}").unwrap()
        );
        assert_eq!(
            parse_space("{x↔y}").unwrap(),
            parse_space("{x<->y}").unwrap()
        );
        assert_eq!(
            parse_map("{a↘b} ⟶ {a=b}").unwrap(),
            parse_map("{a>b} -> {a=b}").unwrap()
        );
        assert_eq!(parse_space("{U′>Z}").unwrap().labels().unwrap()[0], "U'");
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse_space(" {  a >\n b , c } ").unwrap(),
            parse_space("{a>b,c}").unwrap()
        );
    }

    #[test]
    fn empty_space_only_from_empty_braces() {
        assert_eq!(parse_space("{}").unwrap().len(), 0);
        assert!(parse_space("{,}").is_err());
        assert!(parse_space("").is_err());
    }

    #[test]
    fn syntax_errors_report_positions() {
        let err = parse_space_expr("{a>}").unwrap_err();
        assert_eq!(err.position, 3);
        let err = parse_space_expr("{a b}").unwrap_err();
        assert_eq!(err.position, 3);
        let err = parse_space_expr("{a#b}").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_space_expr("{a>b} x").unwrap_err();
        assert_eq!(err.position, 6);
        let err = parse_map_expr("{a>b}").unwrap_err();
        assert_eq!(err.position, 5);
    }

    #[test]
    fn glue_and_repetition() {
        assert_eq!(parse_space("{a=a}").unwrap(), parse_space("{a}").unwrap());
        let s = parse_space("{a>b, b>c}").unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.leq(0, 2));
        let g = parse_space("{U=x=V}").unwrap();
        assert_eq!(g.labels().unwrap(), ["U=x=V"]);
    }

    #[test]
    fn tilde_and_primes_in_labels() {
        let s = parse_space("{U~Z~x>UZx, ~U~Zx<->~U~Z~x}").unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.index_of("~U~Z~x"), Some(3));
        let s = parse_space("{U>Z',Z<V}").unwrap();
        assert_eq!(s.labels().unwrap(), ["U", "Z'", "Z", "V"]);
    }

    #[test]
    fn arrow_direction_symmetry() {
        let a = parse_space("{a>b}").unwrap();
        let b = parse_space("{b<a}").unwrap();
        assert!(a.is_homeomorphic(&b));
    }

    #[test]
    fn maps_by_label() {
        let m = parse_map("{a>b} -> {a=b}").unwrap();
        assert_eq!(m.cod().len(), 1);
        assert_eq!(m.images(), &[0, 0]);

        let m1 = parse_map("{a} -> {a,b}").unwrap();
        let m2 = parse_map("{a} -> {b}").unwrap();
        assert_eq!(m1.images(), m2.images());
        assert!(m1.cod().is_discrete() && m2.cod().is_discrete());
        assert_eq!(m1.cod().len(), 2);

        let g1 = parse_map("{a<U>x<V>b} -> {a<U=x=V>b}").unwrap();
        let g2 = parse_map("{a<U>x<V>b} -> {U=x=V}").unwrap();
        assert_eq!(g1.images(), &[0, 1, 1, 1, 2]);
        assert_eq!(g1.images(), g2.images());
        assert_eq!(g1.cod().closure_rows(), g2.cod().closure_rows());

        let t0 = parse_map("{x<->y} -> {x=y}").unwrap();
        assert_eq!(t0.cod().len(), 1);
    }

    #[test]
    fn star_collapses_to_the_point() {
        let m = parse_map("{a>b} -> {*}").unwrap();
        assert_eq!(m.cod().len(), 1);
        let m = parse_map("{a} -> {a}").unwrap();
        assert_eq!(m.images(), &[0]);
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_space(&parse_space("{a>b}").unwrap()), "{a>b}");
        assert_eq!(format_space(&FiniteSpace::point()), "{*}");
        assert_eq!(format_space(&FiniteSpace::discrete(3)), "{a, b, c}");
        assert_eq!(format_space(&FiniteSpace::empty()), "{}");
        assert_eq!(format_space(&FiniteSpace::antidiscrete(2)), "{a<->b}");
    }

    #[test]
    fn format_map_round_trips() {
        for text in [
            "{a>b} -> {a=b}",
            "{a>b} -> {*}",
            "{x>y} -> {x=y}",
            "{a} -> {b}",
            "{a<U>x<V>b} -> {U=x=V}",
        ] {
            let m = parse_map(text).unwrap();
            let again = parse_map(&format_map(&m)).unwrap();
            // Printing may reorder points, so compare through labels.
            let by_label = |m: &ContinuousMap| {
                let dl = display_labels(m.dom());
                let cl = display_labels(m.cod());
                let mut pairs: Vec<(String, String)> = (0..m.dom().len())
                    .map(|x| {
                        let mut parts: Vec<&str> = cl[m.image(x)].split('=').collect();
                        parts.sort_unstable();
                        (dl[x].clone(), parts.join("="))
                    })
                    .collect();
                pairs.sort();
                pairs
            };
            assert_eq!(
                by_label(&again),
                by_label(&m),
                "{text} -> {}",
                format_map(&m)
            );
            assert!(again.cod().is_homeomorphic(m.cod()));
        }
    }

    #[test]
    fn format_map_renames_clashing_labels() {
        let s = Arc::new(parse_space("{a>b}").unwrap());
        let m = ContinuousMap::constant(s.clone(), s, 0).unwrap();
        let text = format_map(&m);
        let again = parse_map(&text).unwrap();
        assert_eq!(again.images(), &[0, 0], "{text}");
        assert!(again.cod().is_homeomorphic(m.cod()));
    }

    #[test]
    fn subset_formatting() {
        let s = parse_space("{a>b}").unwrap();
        assert_eq!(format_subset(&s, SubsetMask::full(2).bits()), "{a, b}");
    }
}
