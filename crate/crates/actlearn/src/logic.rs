//! Atoms, states, literal-conjunction terms, and propositional formulas.
//!
//! A [`Vocabulary`] fixes a finite ordered set of atoms. A [`State`] is a
//! subset of the atoms (a propositional valuation), a [`Term`] is a
//! consistent conjunction of literals (the empty conjunction is `T`), and a
//! [`Formula`] is an arbitrary propositional formula over the atoms. States
//! and terms are bit-vectors indexed by the vocabulary ordering, so
//! satisfaction, entailment and event application are constant-time.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Hard limit on vocabulary size; keeps `2^|P|` state enumeration feasible.
pub const MAX_ATOMS: usize = 16;

/// Largest vocabulary for which all `3^|P|` terms may be enumerated.
pub const MAX_TERM_ENUM_ATOMS: usize = 10;

pub(crate) type Bits = u32;

/// A finite ordered set of distinct atom identifiers.
///
/// The ordering is fixed for the lifetime of the vocabulary and determines
/// the canonical enumeration order of states and terms. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Vocabulary {
    atoms: Arc<Vec<String>>,
}

fn valid_atom(name: &str) -> bool {
    if name == "T" || name == "F" {
        return false;
    }
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Vocabulary {
    /// Builds a vocabulary from distinct atom names, in the given order.
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms {
                size: atoms.len(),
                max: MAX_ATOMS,
            });
        }
        for (i, a) in atoms.iter().enumerate() {
            if !valid_atom(a) {
                return Err(Error::InvalidAtom(a.clone()));
            }
            if atoms[..i].contains(a) {
                return Err(Error::DuplicateAtom(a.clone()));
            }
        }
        Ok(Vocabulary {
            atoms: Arc::new(atoms),
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_name(&self, index: usize) -> &str {
        &self.atoms[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// True when both vocabularies list the same atoms in the same order.
    pub fn same_as(&self, other: &Vocabulary) -> bool {
        Arc::ptr_eq(&self.atoms, &other.atoms) || self.atoms == other.atoms
    }

    pub(crate) fn check_same(&self, other: &Vocabulary) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::VocabularyMismatch)
        }
    }

    pub(crate) fn mask(&self) -> Bits {
        ((1u64 << self.len()) - 1) as Bits
    }

    /// Number of states over this vocabulary (`2^|P|`).
    pub fn state_count(&self) -> usize {
        1usize << self.len()
    }

    /// All states in canonical order (by bit pattern, ascending).
    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.state_count() as Bits).map(move |bits| State {
            voc: self.clone(),
            bits,
        })
    }

    pub fn empty_state(&self) -> State {
        State {
            voc: self.clone(),
            bits: 0,
        }
    }

    pub fn full_state(&self) -> State {
        State {
            voc: self.clone(),
            bits: self.mask(),
        }
    }

    /// Builds the state containing exactly the named atoms.
    pub fn state<I, S>(&self, members: I) -> Result<State>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0;
        for name in members {
            let i = self
                .index_of(name.as_ref())
                .ok_or_else(|| Error::UnknownAtom(name.as_ref().to_owned()))?;
            bits |= 1 << i;
        }
        Ok(State {
            voc: self.clone(),
            bits,
        })
    }

    pub(crate) fn state_from_bits(&self, bits: Bits) -> State {
        debug_assert_eq!(bits & !self.mask(), 0);
        State {
            voc: self.clone(),
            bits,
        }
    }

    /// The empty conjunction `T`.
    pub fn top(&self) -> Term {
        Term {
            voc: self.clone(),
            pos: 0,
            neg: 0,
        }
    }

    /// Builds a term from positive and negative atom names.
    pub fn term<I, J, S, U>(&self, pos: I, neg: J) -> Result<Term>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = U>,
        S: AsRef<str>,
        U: AsRef<str>,
    {
        let pos_bits = self.state(pos)?.bits;
        let neg_bits = self.state(neg)?.bits;
        self.term_from_bits(pos_bits, neg_bits)
    }

    pub(crate) fn term_from_bits(&self, pos: Bits, neg: Bits) -> Result<Term> {
        if pos & neg != 0 {
            let clash = (pos & neg).trailing_zeros() as usize;
            return Err(Error::InconsistentTerm(self.atoms[clash].clone()));
        }
        Ok(Term {
            voc: self.clone(),
            pos,
            neg,
        })
    }

    /// All `3^|P|` consistent terms, in canonical order.
    ///
    /// The canonical order is lexicographic in the per-atom code
    /// absent < positive < negative, following the vocabulary ordering.
    pub fn terms(&self) -> Result<Vec<Term>> {
        let n = self.len();
        if n > MAX_TERM_ENUM_ATOMS {
            return Err(Error::Capacity {
                what: "term enumeration",
                atoms: n,
                max: MAX_TERM_ENUM_ATOMS,
            });
        }
        let total = 3usize.pow(n as u32);
        let mut out = Vec::with_capacity(total);
        for code in 0..total {
            let mut rest = code;
            let mut pos = 0;
            let mut neg = 0;
            // atom 0 carries the most significant base-3 digit
            for i in (0..n).rev() {
                match rest % 3 {
                    1 => pos |= 1 << i,
                    2 => neg |= 1 << i,
                    _ => {}
                }
                rest /= 3;
            }
            out.push(Term {
                voc: self.clone(),
                pos,
                neg,
            });
        }
        Ok(out)
    }

    /// Parses a state rendered as `{p,q}`; the empty state is `{}`.
    pub fn parse_state(&self, text: &str) -> Result<State> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected a state like `{{p,q}}`, got `{t}`")))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(self.empty_state());
        }
        self.state(inner.split(',').map(str::trim))
    }

    /// Parses a term rendered as conjuncts joined by `&`, negation as `-`,
    /// and the empty conjunction as `T` (e.g. `p&-q`).
    pub fn parse_term(&self, text: &str) -> Result<Term> {
        let t = text.trim();
        if t == "T" {
            return Ok(self.top());
        }
        if t.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut pos = 0;
        let mut neg = 0;
        for tok in t.split('&') {
            let tok = tok.trim();
            let (negated, name) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, tok),
            };
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownAtom(name.to_owned()))?;
            let bit = 1 << i;
            if negated {
                neg |= bit;
            } else {
                pos |= bit;
            }
        }
        self.term_from_bits(pos, neg)
    }

    pub fn tt(&self) -> Formula {
        Formula {
            voc: self.clone(),
            node: Arc::new(Node::True),
        }
    }

    pub fn ff(&self) -> Formula {
        Formula {
            voc: self.clone(),
            node: Arc::new(Node::False),
        }
    }

    pub fn atom(&self, name: &str) -> Result<Formula> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownAtom(name.to_owned()))?;
        Ok(Formula {
            voc: self.clone(),
            node: Arc::new(Node::Atom(i as u8)),
        })
    }

    /// Parses a formula over this vocabulary.
    ///
    /// Grammar: `|` and `&` are disjunction and conjunction (`&` binds
    /// tighter), `-` is negation, `T`/`F` are the constants, parentheses
    /// group. Example: `-(p & -q) | r`.
    pub fn parse_formula(&self, text: &str) -> Result<Formula> {
        let mut p = FormulaParser {
            voc: self,
            chars: text.char_indices().peekable(),
            text,
        };
        let node = p.or_expr()?;
        p.skip_ws();
        if let Some((i, c)) = p.chars.peek().copied() {
            return Err(Error::Parse(format!(
                "unexpected `{c}` at byte {i} in formula `{text}`"
            )));
        }
        Ok(Formula {
            voc: self.clone(),
            node: Arc::new(node),
        })
    }
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Vocabulary {}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.atoms.join(","))
    }
}

/// A propositional state: a subset of the vocabulary's atoms.
#[derive(Clone, Debug)]
pub struct State {
    voc: Vocabulary,
    bits: Bits,
}

impl State {
    pub fn vocabulary(&self) -> &Vocabulary {
        &self.voc
    }

    pub(crate) fn bits(&self) -> Bits {
        self.bits
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Number of atoms true in this state.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, atom: &str) -> bool {
        match self.voc.index_of(atom) {
            Some(i) => self.bits & (1 << i) != 0,
            None => false,
        }
    }

    /// Names of the atoms true in this state, in vocabulary order.
    pub fn members(&self) -> impl Iterator<Item = &str> + '_ {
        (0..self.voc.len())
            .filter(move |i| self.bits & (1 << i) != 0)
            .map(move |i| self.voc.atom_name(i))
    }

    /// True iff every positive conjunct of `t` is in the state and no
    /// negative conjunct is.
    pub fn satisfies(&self, t: &Term) -> Result<bool> {
        self.voc.check_same(&t.voc)?;
        Ok(t.holds_on(self.bits))
    }

    /// The maximal term mentioning every atom, satisfied by exactly this state.
    pub fn maximal_term(&self) -> Term {
        Term {
            voc: self.voc.clone(),
            pos: self.bits,
            neg: !self.bits & self.voc.mask(),
        }
    }

    /// The term recording the literals on which `after` differs from this
    /// state: positives for atoms gained, negatives for atoms lost.
    pub fn delta(&self, after: &State) -> Result<Term> {
        self.voc.check_same(&after.voc)?;
        Ok(Term {
            voc: self.voc.clone(),
            pos: after.bits & !self.bits,
            neg: self.bits & !after.bits,
        })
    }
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.voc.same_as(&other.voc)
    }
}

impl Eq for State {}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .cmp(&other.bits)
            .then_with(|| self.voc.atoms.cmp(&other.voc.atoms))
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for name in self.members() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{name}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// A consistent conjunction of literals; the empty conjunction is `T`.
#[derive(Clone, Debug)]
pub struct Term {
    voc: Vocabulary,
    pos: Bits,
    neg: Bits,
}

impl Term {
    pub fn vocabulary(&self) -> &Vocabulary {
        &self.voc
    }

    pub(crate) fn pos_bits(&self) -> Bits {
        self.pos
    }

    pub(crate) fn neg_bits(&self) -> Bits {
        self.neg
    }

    pub fn is_top(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    /// Number of literals in the conjunction.
    pub fn len(&self) -> usize {
        (self.pos | self.neg).count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.is_top()
    }

    pub fn pos_atoms(&self) -> impl Iterator<Item = &str> + '_ {
        (0..self.voc.len())
            .filter(move |i| self.pos & (1 << i) != 0)
            .map(move |i| self.voc.atom_name(i))
    }

    pub fn neg_atoms(&self) -> impl Iterator<Item = &str> + '_ {
        (0..self.voc.len())
            .filter(move |i| self.neg & (1 << i) != 0)
            .map(move |i| self.voc.atom_name(i))
    }

    pub(crate) fn holds_on(&self, state_bits: Bits) -> bool {
        self.pos & state_bits == self.pos && self.neg & state_bits == 0
    }

    /// True iff the conjuncts of `other` are a subset of this term's, i.e.
    /// every state satisfying `self` also satisfies `other`.
    pub fn entails(&self, other: &Term) -> Result<bool> {
        self.voc.check_same(&other.voc)?;
        Ok(other.pos & self.pos == other.pos && other.neg & self.neg == other.neg)
    }

    /// True when every atom occurs in the conjunction.
    pub fn is_maximal(&self) -> bool {
        self.pos | self.neg == self.voc.mask()
    }

    /// This term with every conjunct also occurring in `of` deleted.
    pub(crate) fn minus_conjuncts(&self, of: &Term) -> Term {
        Term {
            voc: self.voc.clone(),
            pos: self.pos & !of.pos,
            neg: self.neg & !of.neg,
        }
    }

    /// True when the two terms share a conjunct.
    pub(crate) fn shares_conjunct(&self, other: &Term) -> bool {
        self.pos & other.pos != 0 || self.neg & other.neg != 0
    }

    /// The conjunction of literals as a formula.
    pub fn to_formula(&self) -> Formula {
        let mut node: Option<Node> = None;
        for i in 0..self.voc.len() {
            let bit = 1 << i;
            let lit = if self.pos & bit != 0 {
                Node::Atom(i as u8)
            } else if self.neg & bit != 0 {
                Node::Not(Arc::new(Node::Atom(i as u8)))
            } else {
                continue;
            };
            node = Some(match node {
                None => lit,
                Some(acc) => Node::And(Arc::new(acc), Arc::new(lit)),
            });
        }
        Formula {
            voc: self.voc.clone(),
            node: Arc::new(node.unwrap_or(Node::True)),
        }
    }

    fn code(&self, i: usize) -> u8 {
        let bit = 1 << i;
        if self.pos & bit != 0 {
            1
        } else if self.neg & bit != 0 {
            2
        } else {
            0
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.pos == other.pos && self.neg == other.neg && self.voc.same_as(&other.voc)
    }
}

impl Eq for Term {}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    /// Canonical term order: lexicographic in the per-atom code
    /// absent < positive < negative, atom 0 first.
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.voc.len().max(other.voc.len());
        for i in 0..n {
            match self.code(i).cmp(&other.code(i)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.voc.atoms.cmp(&other.voc.atoms)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            return write!(f, "T");
        }
        let mut first = true;
        for i in 0..self.voc.len() {
            let bit = 1 << i;
            if self.pos & bit == 0 && self.neg & bit == 0 {
                continue;
            }
            if !first {
                write!(f, "&")?;
            }
            if self.neg & bit != 0 {
                write!(f, "-")?;
            }
            write!(f, "{}", self.voc.atom_name(i))?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Node {
    True,
    False,
    Atom(u8),
    Not(Arc<Node>),
    And(Arc<Node>, Arc<Node>),
    Or(Arc<Node>, Arc<Node>),
}

impl Node {
    fn eval(&self, bits: Bits) -> bool {
        match self {
            Node::True => true,
            Node::False => false,
            Node::Atom(i) => bits & (1 << i) != 0,
            Node::Not(g) => !g.eval(bits),
            Node::And(a, b) => a.eval(bits) && b.eval(bits),
            Node::Or(a, b) => a.eval(bits) || b.eval(bits),
        }
    }

    /// Disjuncts of a DNF of this node (negated when `positive` is false),
    /// with inconsistent disjuncts dropped on the fly.
    fn dnf(&self, positive: bool) -> Vec<(Bits, Bits)> {
        match (self, positive) {
            (Node::True, true) | (Node::False, false) => vec![(0, 0)],
            (Node::True, false) | (Node::False, true) => vec![],
            (Node::Atom(i), true) => vec![(1 << i, 0)],
            (Node::Atom(i), false) => vec![(0, 1 << i)],
            (Node::Not(g), p) => g.dnf(!p),
            (Node::And(a, b), true) | (Node::Or(a, b), false) => {
                let left = a.dnf(positive);
                let right = b.dnf(positive);
                let mut out = Vec::new();
                for &(p1, n1) in &left {
                    for &(p2, n2) in &right {
                        let (p, n) = (p1 | p2, n1 | n2);
                        if p & n == 0 {
                            out.push((p, n));
                        }
                    }
                }
                out
            }
            (Node::And(a, b), false) | (Node::Or(a, b), true) => {
                let mut out = a.dnf(positive);
                out.extend(b.dnf(positive));
                out
            }
        }
    }
}

/// An arbitrary propositional formula over a vocabulary.
#[derive(Clone, Debug)]
pub struct Formula {
    voc: Vocabulary,
    node: Arc<Node>,
}

impl Formula {
    pub fn vocabulary(&self) -> &Vocabulary {
        &self.voc
    }

    /// Standard propositional truth evaluation in `state`.
    pub fn eval(&self, state: &State) -> Result<bool> {
        self.voc.check_same(&state.voc)?;
        Ok(self.node.eval(state.bits))
    }

    pub(crate) fn eval_bits(&self, bits: Bits) -> bool {
        self.node.eval(bits)
    }

    /// A disjunctive normal form as a set of consistent canonical terms:
    /// the formula holds in a state iff some returned term does.
    ///
    /// Naive distribution with contradiction pruning and deduplication; no
    /// minimization. An unsatisfiable formula yields the empty set.
    pub fn dnf(&self) -> Vec<Term> {
        let mut set: std::collections::BTreeSet<Term> = std::collections::BTreeSet::new();
        for (pos, neg) in self.node.dnf(true) {
            set.insert(Term {
                voc: self.voc.clone(),
                pos,
                neg,
            });
        }
        set.into_iter().collect()
    }
}

impl std::ops::Not for Formula {
    type Output = Formula;
    fn not(self) -> Formula {
        Formula {
            voc: self.voc.clone(),
            node: Arc::new(Node::Not(self.node)),
        }
    }
}

/// Panics when the operands belong to different vocabularies.
impl std::ops::BitAnd for Formula {
    type Output = Formula;
    fn bitand(self, rhs: Formula) -> Formula {
        assert!(
            self.voc.same_as(&rhs.voc),
            "cannot combine formulas over different vocabularies"
        );
        Formula {
            voc: self.voc.clone(),
            node: Arc::new(Node::And(self.node, rhs.node)),
        }
    }
}

/// Panics when the operands belong to different vocabularies.
impl std::ops::BitOr for Formula {
    type Output = Formula;
    fn bitor(self, rhs: Formula) -> Formula {
        assert!(
            self.voc.same_as(&rhs.voc),
            "cannot combine formulas over different vocabularies"
        );
        Formula {
            voc: self.voc.clone(),
            node: Arc::new(Node::Or(self.node, rhs.node)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(node: &Node, voc: &Vocabulary, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match node {
                Node::True => write!(f, "T"),
                Node::False => write!(f, "F"),
                Node::Atom(i) => write!(f, "{}", voc.atom_name(*i as usize)),
                Node::Not(g) => {
                    write!(f, "-")?;
                    match **g {
                        Node::Atom(_) | Node::True | Node::False | Node::Not(_) => go(g, voc, f),
                        _ => {
                            write!(f, "(")?;
                            go(g, voc, f)?;
                            write!(f, ")")
                        }
                    }
                }
                Node::And(a, b) => {
                    for (i, part) in [a, b].into_iter().enumerate() {
                        if i > 0 {
                            write!(f, " & ")?;
                        }
                        match **part {
                            Node::Or(_, _) => {
                                write!(f, "(")?;
                                go(part, voc, f)?;
                                write!(f, ")")?;
                            }
                            _ => go(part, voc, f)?,
                        }
                    }
                    Ok(())
                }
                Node::Or(a, b) => {
                    go(a, voc, f)?;
                    write!(f, " | ")?;
                    go(b, voc, f)
                }
            }
        }
        go(&self.node, &self.voc, f)
    }
}

struct FormulaParser<'a> {
    voc: &'a Vocabulary,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl FormulaParser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn or_expr(&mut self) -> Result<Node> {
        let mut node = self.and_expr()?;
        loop {
            self.skip_ws();
            if matches!(self.chars.peek(), Some((_, '|'))) {
                self.chars.next();
                let rhs = self.and_expr()?;
                node = Node::Or(Arc::new(node), Arc::new(rhs));
            } else {
                return Ok(node);
            }
        }
    }

    fn and_expr(&mut self) -> Result<Node> {
        let mut node = self.unary()?;
        loop {
            self.skip_ws();
            if matches!(self.chars.peek(), Some((_, '&'))) {
                self.chars.next();
                let rhs = self.unary()?;
                node = Node::And(Arc::new(node), Arc::new(rhs));
            } else {
                return Ok(node);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        self.skip_ws();
        match self.chars.peek().copied() {
            Some((_, '-')) | Some((_, '!')) => {
                self.chars.next();
                Ok(Node::Not(Arc::new(self.unary()?)))
            }
            Some((_, '(')) => {
                self.chars.next();
                let inner = self.or_expr()?;
                self.skip_ws();
                match self.chars.next() {
                    Some((_, ')')) => Ok(inner),
                    _ => Err(Error::Parse(format!(
                        "missing `)` in formula `{}`",
                        self.text
                    ))),
                }
            }
            Some((start, c)) if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = start + c.len_utf8();
                self.chars.next();
                while let Some(&(i, c)) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        end = i + c.len_utf8();
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                let name = &self.text[start..end];
                match name {
                    "T" => Ok(Node::True),
                    "F" => Ok(Node::False),
                    _ => {
                        let i = self
                            .voc
                            .index_of(name)
                            .ok_or_else(|| Error::UnknownAtom(name.to_owned()))?;
                        Ok(Node::Atom(i as u8))
                    }
                }
            }
            Some((i, c)) => Err(Error::Parse(format!(
                "unexpected `{c}` at byte {i} in formula `{}`",
                self.text
            ))),
            None => Err(Error::Parse(format!(
                "formula `{}` ended unexpectedly",
                self.text
            ))),
        }
    }
}
