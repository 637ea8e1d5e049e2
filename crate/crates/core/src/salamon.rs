//! Salamon tuple notation for nilpotent Lie algebras.
//!
//! The `k`-th slot lists `d e^k` as a signed sum of 2-forms `ij = e^i ∧ e^j`.
//! With `(df)(x ∧ y) = -f([x, y])`, a term `+ij` in slot `k` means
//! `[e_i, e_j] = -e_k`. So `(0,0,12)` is the Heisenberg algebra with
//! `[e_1, e_2] = -e_3`, and `42` contributes with the opposite sign to `24`.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! tuple := "(" entry ("," entry)* ")"
//! entry := "0" | ["-"] term (("+" | "-") term)*
//! term  := digit digit        digits in 1..9
//! ```

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::lie::{LieAlgebra, LieError};
use crate::rational::{self, Rational};

pub const MAX_DIM: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SalamonError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: &'static str },
    #[error("tuple has {0} entries; at most 9 are supported")]
    TooLarge(usize),
    #[error("entry {entry}: index {index} out of range for dimension {dim}")]
    IndexOutOfRange { entry: usize, index: usize, dim: usize },
    #[error("entry {entry}: term {i}{j} repeats an index")]
    RepeatedIndex { entry: usize, i: usize, j: usize },
    #[error("entry {entry}: term {i}{j} violates triangularity (index {bad} not < {entry})")]
    Triangularity {
        entry: usize,
        i: usize,
        j: usize,
        bad: usize,
    },
    #[error("entry {entry}: the 2-form {i}{j} appears more than once")]
    DuplicateTerm { entry: usize, i: usize, j: usize },
    #[error("tuple does not define a Lie algebra: {0}")]
    NotLie(LieError),
    #[error("bracket [e{i},e{j}] has a component on e{k} but {k} is not above both indices")]
    NonTriangular { i: usize, j: usize, k: usize },
    #[error("coefficient {coefficient} of {i}{j} in slot {k} is not ±1; change basis first")]
    NonUnitCoefficient {
        i: usize,
        j: usize,
        k: usize,
        coefficient: String,
    },
}

/// One signed 2-form `± e^i ∧ e^j` (1-based, in the order written).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub negative: bool,
    pub i: usize,
    pub j: usize,
}

impl Term {
    /// Same 2-form written with ascending indices.
    pub fn oriented(self) -> Term {
        if self.i < self.j {
            self
        } else {
            Term {
                negative: !self.negative,
                i: self.j,
                j: self.i,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SalamonTuple {
    pub entries: Vec<Vec<Term>>,
}

impl SalamonTuple {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Ascending indices in every term, terms sorted by index pair.
    pub fn canonical(&self) -> SalamonTuple {
        let entries = self
            .entries
            .iter()
            .map(|terms| {
                let mut t: Vec<Term> = terms.iter().map(|t| t.oriented()).collect();
                t.sort_by_key(|t| (t.i, t.j));
                t
            })
            .collect();
        SalamonTuple { entries }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, SalamonError> {
        let n = self.dim();
        let mut brackets = Vec::new();
        for (k, terms) in self.entries.iter().enumerate() {
            for t in terms {
                let coef = if t.negative { rational::one() } else { -rational::one() };
                brackets.push((t.i - 1, t.j - 1, rational::combo(n, &[(k, coef)])));
            }
        }
        LieAlgebra::from_brackets(n, &brackets).map_err(SalamonError::NotLie)
    }

    /// Reads the tuple off an algebra whose basis is already triangular with
    /// unit coefficients.
    pub fn from_algebra(g: &LieAlgebra) -> Result<SalamonTuple, SalamonError> {
        let n = g.dim();
        if n > MAX_DIM {
            return Err(SalamonError::TooLarge(n));
        }
        let mut entries = alloc::vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                for (k, entry) in entries.iter_mut().enumerate() {
                    let c = g.structure_constant(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    if k <= j {
                        return Err(SalamonError::NonTriangular {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                    // coefficient of e^i ∧ e^j in d e^k is -c
                    let form = -c.clone();
                    let negative = if form.is_one() {
                        false
                    } else if (-form.clone()).is_one() {
                        true
                    } else {
                        return Err(SalamonError::NonUnitCoefficient {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            coefficient: rational::format_rational(&form),
                        });
                    };
                    entry.push(Term {
                        negative,
                        i: i + 1,
                        j: j + 1,
                    });
                }
            }
        }
        Ok(SalamonTuple { entries })
    }
}

impl fmt::Display for SalamonTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, terms) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if terms.is_empty() {
                f.write_str("0")?;
            }
            for (n, t) in terms.iter().enumerate() {
                if t.negative {
                    f.write_str("-")?;
                } else if n > 0 {
                    f.write_str("+")?;
                }
                write!(f, "{}{}", t.i, t.j)?;
            }
        }
        f.write_str(")")
    }
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    /// Character offset of the next token.
    fn offset(&self) -> usize {
        self.pos
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, want: char, expected: &'static str) -> Result<(), SalamonError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(SalamonError::Syntax {
                position: self.offset(),
                expected,
            }),
        }
    }

    fn term(&mut self, negative: bool) -> Result<Term, SalamonError> {
        self.skip_ws();
        let start = self.offset();
        let mut digits = [0usize; 2];
        for d in &mut digits {
            match self.chars.get(self.pos).copied() {
                Some(c @ '1'..='9') => {
                    *d = c as usize - '0' as usize;
                    self.pos += 1;
                }
                _ => {
                    return Err(SalamonError::Syntax {
                        position: self.offset().max(start),
                        expected: "a digit 1-9",
                    })
                }
            }
        }
        Ok(Term {
            negative,
            i: digits[0],
            j: digits[1],
        })
    }

    fn entry(&mut self) -> Result<Vec<Term>, SalamonError> {
        if self.peek() == Some('0') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut terms = alloc::vec![self.term(negative)?];
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    terms.push(self.term(false)?);
                }
                Some('-') => {
                    self.pos += 1;
                    terms.push(self.term(true)?);
                }
                _ => return Ok(terms),
            }
        }
    }
}

/// Parses the notation without building the algebra.
pub fn parse_tuple(text: &str) -> Result<SalamonTuple, SalamonError> {
    let mut s = Scanner::new(text);
    s.expect('(', "'('")?;
    let mut entries = alloc::vec![s.entry()?];
    loop {
        match s.bump() {
            Some(',') => entries.push(s.entry()?),
            Some(')') => break,
            _ => {
                return Err(SalamonError::Syntax {
                    position: s.offset().saturating_sub(1),
                    expected: "',' or ')'",
                })
            }
        }
    }
    if s.peek().is_some() {
        return Err(SalamonError::Syntax {
            position: s.offset(),
            expected: "end of input",
        });
    }
    let n = entries.len();
    if n > MAX_DIM {
        return Err(SalamonError::TooLarge(n));
    }
    for (k0, terms) in entries.iter().enumerate() {
        let k = k0 + 1;
        let mut seen = BTreeMap::new();
        for t in terms {
            for idx in [t.i, t.j] {
                if idx > n {
                    return Err(SalamonError::IndexOutOfRange {
                        entry: k,
                        index: idx,
                        dim: n,
                    });
                }
            }
            if t.i == t.j {
                return Err(SalamonError::RepeatedIndex {
                    entry: k,
                    i: t.i,
                    j: t.j,
                });
            }
            for idx in [t.i, t.j] {
                if idx >= k {
                    return Err(SalamonError::Triangularity {
                        entry: k,
                        i: t.i,
                        j: t.j,
                        bad: idx,
                    });
                }
            }
            let o = t.oriented();
            if seen.insert((o.i, o.j), ()).is_some() {
                return Err(SalamonError::DuplicateTerm {
                    entry: k,
                    i: t.i,
                    j: t.j,
                });
            }
        }
    }
    Ok(SalamonTuple { entries })
}

/// Parses the notation into a validated Lie algebra.
pub fn parse_salamon(text: &str) -> Result<LieAlgebra, SalamonError> {
    parse_tuple(text)?.to_algebra()
}

/// Canonical string for a triangular algebra with unit coefficients.
pub fn emit_salamon(g: &LieAlgebra) -> Result<String, SalamonError> {
    Ok(alloc::format!("{}", SalamonTuple::from_algebra(g)?))
}

/// Whitespace-free, oriented, sorted rendering of a tuple string.
pub fn canonicalize(text: &str) -> Result<String, SalamonError> {
    Ok(alloc::format!("{}", parse_tuple(text)?.canonical()))
}

/// Coefficient helper for callers comparing against `Rational`.
pub fn term_coefficient(t: &Term) -> Rational {
    if t.negative {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// A 2-form as coefficients of `e^i ∧ e^j`, `i < j`.
pub type TwoForm = BTreeMap<(usize, usize), Rational>;
/// A 3-form as coefficients of `e^i ∧ e^j ∧ e^l`, `i < j < l`.
pub type ThreeForm = BTreeMap<(usize, usize, usize), Rational>;

/// `d e^k` for the table of `g`, with `(df)(x ∧ y) = -f([x, y])`. Works on
/// any antisymmetric table, Jacobi or not.
pub fn d_one_form(g: &LieAlgebra, k: usize) -> TwoForm {
    let n = g.dim();
    let mut out = TwoForm::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = g.structure_constant(i, j, k);
            if !c.is_zero() {
                out.insert((i, j), -c.clone());
            }
        }
    }
    out
}

fn add_wedge(out: &mut ThreeForm, mut idx: [usize; 3], c: Rational) {
    if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
        return;
    }
    let mut sign = false;
    for a in 0..3 {
        for b in 0..2 - a {
            if idx[b] > idx[b + 1] {
                idx.swap(b, b + 1);
                sign = !sign;
            }
        }
    }
    let c = if sign { -c } else { c };
    let key = (idx[0], idx[1], idx[2]);
    let v = out.remove(&key).unwrap_or_else(Rational::zero) + c;
    if !v.is_zero() {
        out.insert(key, v);
    }
}

/// `d(d e^k)` using `d(e^i ∧ e^j) = de^i ∧ e^j - e^i ∧ de^j`.
pub fn d_squared(g: &LieAlgebra, k: usize) -> ThreeForm {
    let mut out = ThreeForm::new();
    for ((i, j), c) in d_one_form(g, k) {
        for ((a, b), ci) in d_one_form(g, i) {
            add_wedge(&mut out, [a, b, j], &c * &ci);
        }
        for ((a, b), cj) in d_one_form(g, j) {
            add_wedge(&mut out, [i, a, b], -(&c * &cj));
        }
    }
    out
}

/// Indices `k` with `d² e^k ≠ 0`; empty exactly when the table satisfies
/// Jacobi.
pub fn d_squared_defects(g: &LieAlgebra) -> Vec<usize> {
    (0..g.dim()).filter(|&k| !d_squared(g, k).is_empty()).collect()
}
