//! Angle prescriptions: the integers `m`, `a`, `b`, existence tests and the
//! admissible values of the angle ratio.

use crate::rational::{fmt_q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstraintError {
    #[error("bad angle vector: {0}")]
    BadAngleVector(String),
    #[error("bad type partition: {0}")]
    BadPartition(String),
    #[error("no admissible ratio for this type partition")]
    EmptySpace,
}

/// Cone angles in units of `2*pi`, stored in the conventional order:
/// integers greater than one first, then non-integers, then zeros.
/// Entries equal to one are not cone points and are refused.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AngleVector(Vec<Q>);

fn group(x: &Q) -> u8 {
    if x.is_zero() {
        2
    } else if x.is_integer() {
        0
    } else {
        1
    }
}

impl AngleVector {
    /// Validates entries and moves them into conventional order. The sort is
    /// stable, so an already ordered input keeps its indices.
    pub fn new(mut entries: Vec<Q>) -> Result<Self, ConstraintError> {
        if entries.is_empty() {
            return Err(ConstraintError::BadAngleVector("no entries".into()));
        }
        for x in &entries {
            if *x < Q::zero() {
                return Err(ConstraintError::BadAngleVector(format!(
                    "negative entry {}",
                    fmt_q(x)
                )));
            }
            if x.is_one() {
                return Err(ConstraintError::BadAngleVector(
                    "entry equal to 1 is a smooth point".into(),
                ));
            }
        }
        entries.sort_by_key(group);
        Ok(AngleVector(entries))
    }

    pub fn from_integers(entries: &[i64]) -> Result<Self, ConstraintError> {
        Self::new(entries.iter().map(|&x| Q::from_integer(x)).collect())
    }

    pub fn entries(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of integer entries, i.e. entries that may be saddles.
    pub fn k(&self) -> usize {
        self.0.iter().filter(|x| group(x) == 0).count()
    }

    /// Number of zero entries (cusps).
    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|x| x.is_zero()).count()
    }

    /// The index set `{0, .., k-1}` of all integer entries.
    pub fn all_integers(&self) -> BTreeSet<usize> {
        (0..self.k()).collect()
    }

    pub fn check_saddles(&self, z: &BTreeSet<usize>) -> Result<(), ConstraintError> {
        match z.iter().find(|&&i| i >= self.k()) {
            Some(i) => Err(ConstraintError::BadPartition(format!(
                "index {} is not an integer entry",
                i + 1
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for AngleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", crate::rational::QList(&self.0))
    }
}

/// Assignment of each entry to saddles `Z`, maxima `P+` or minima `P-`.
/// Indices are zero based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypePartition {
    pub saddles: BTreeSet<usize>,
    pub maxima: BTreeSet<usize>,
    pub minima: BTreeSet<usize>,
}

impl TypePartition {
    pub fn validate(&self, alpha: &AngleVector) -> Result<(), ConstraintError> {
        alpha.check_saddles(&self.saddles)?;
        let mut seen = BTreeSet::new();
        for i in self.saddles.iter().chain(&self.maxima).chain(&self.minima) {
            if *i >= alpha.len() || !seen.insert(*i) {
                return Err(ConstraintError::BadPartition(format!(
                    "index {} repeated or out of range",
                    i + 1
                )));
            }
        }
        if seen.len() != alpha.len() {
            return Err(ConstraintError::BadPartition("not every entry is assigned".into()));
        }
        if let Some(i) = self.maxima.iter().find(|&&i| alpha.0[i].is_zero()) {
            return Err(ConstraintError::BadPartition(format!(
                "zero entry {} cannot be a maximum",
                i + 1
            )));
        }
        Ok(())
    }

    /// All assignments of the non-saddle entries to maxima or minima, up to
    /// swapping entries of equal angle. Zeros always go to minima.
    pub fn enumerate(alpha: &AngleVector, saddles: &BTreeSet<usize>) -> Vec<TypePartition> {
        let rest: Vec<usize> = (0..alpha.len()).filter(|i| !saddles.contains(i)).collect();
        let free: Vec<usize> = rest.iter().copied().filter(|&i| !alpha.0[i].is_zero()).collect();
        let mut out = Vec::new();
        let mut signatures = BTreeSet::new();
        for mask in 0u64..(1u64 << free.len()) {
            let mut t = TypePartition {
                saddles: saddles.clone(),
                ..Default::default()
            };
            for &i in &rest {
                if alpha.0[i].is_zero() {
                    t.minima.insert(i);
                }
            }
            for (bit, &i) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    t.minima.insert(i);
                } else {
                    t.maxima.insert(i);
                }
            }
            let mut up: Vec<Q> = t.maxima.iter().map(|&i| alpha.0[i]).collect();
            let mut down: Vec<Q> = t.minima.iter().map(|&i| alpha.0[i]).collect();
            up.sort();
            down.sort();
            if signatures.insert((up, down)) {
                out.push(t);
            }
        }
        out
    }
}

/// `(m, a, b)` for a saddle set `Z`: the number of smooth extremal points,
/// the number of extremal points and the number of arcs.
pub fn invariants_m_a(
    genus: u32,
    alpha: &AngleVector,
    saddles: &BTreeSet<usize>,
) -> Result<(i64, i64, i64), ConstraintError> {
    alpha.check_saddles(saddles)?;
    let g = genus as i64;
    let n = alpha.len() as i64;
    let b: i64 = saddles.iter().map(|&i| alpha.0[i].to_integer()).sum();
    let m = b - (2 * g - 2 + n);
    let a = b - saddles.len() as i64 - (2 * g - 2);
    Ok((m, a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    A1,
    A2,
    A3,
    B,
    Football,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A1 => "A.1",
            Case::A2 => "A.2",
            Case::A3 => "A.3",
            Case::B => "B",
            Case::Football => "football",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Existence {
    Nonempty(Case),
    Empty,
}

impl Existence {
    pub fn is_nonempty(self) -> bool {
        matches!(self, Existence::Nonempty(_))
    }
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Existence::Nonempty(c) => write!(f, "nonempty (case {c})"),
            Existence::Empty => f.write_str("empty"),
        }
    }
}

/// Existence of surfaces with the given saddle set.
pub fn check_refined(
    genus: u32,
    alpha: &AngleVector,
    saddles: &BTreeSet<usize>,
) -> Result<Existence, ConstraintError> {
    let (m, a, _) = invariants_m_a(genus, alpha, saddles)?;
    let cusps = alpha.zeros() as i64;
    let label = |c: Case| {
        if saddles.is_empty() {
            Existence::Nonempty(Case::Football)
        } else {
            Existence::Nonempty(c)
        }
    };
    if cusps > 0 {
        return Ok(if a > cusps && m >= 0 {
            label(Case::B)
        } else {
            Existence::Empty
        });
    }
    if a >= 3 && m >= 0 {
        return Ok(label(Case::A1));
    }
    if a == 2 && m == 1 {
        return Ok(label(Case::A2));
    }
    if a == 2 && m == 0 {
        let rest: Vec<Q> = (0..alpha.len())
            .filter(|i| !saddles.contains(i))
            .map(|i| alpha.0[i])
            .collect();
        if rest.len() == 2 && rest[0] != rest[1] {
            return Ok(label(Case::A3));
        }
    }
    Ok(Existence::Empty)
}

/// Existence of surfaces with these cone angles, taking every integer entry
/// as a saddle (the largest choice, which dominates all others).
pub fn check_existence(genus: u32, alpha: &AngleVector) -> Result<Existence, ConstraintError> {
    check_refined(genus, alpha, &alpha.all_integers())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioChoice {
    pub ratio: Q,
    pub m_plus: i64,
    pub m_minus: i64,
}

/// Every admissible `(R, m+, m-)` for a type partition.
pub fn enumerate_ratios(
    genus: u32,
    alpha: &AngleVector,
    t: &TypePartition,
) -> Result<Vec<RatioChoice>, ConstraintError> {
    t.validate(alpha)?;
    let (m, _, _) = invariants_m_a(genus, alpha, &t.saddles)?;
    if m < 0 {
        return Err(ConstraintError::EmptySpace);
    }
    let a_plus: Q = t.maxima.iter().map(|&i| alpha.0[i]).sum();
    let a_minus: Q = t.minima.iter().map(|&i| alpha.0[i]).sum();
    let n_plus = t.maxima.len() as i64;
    let n_minus = t.minima.len() as i64;
    if alpha.zeros() > 0 {
        // All minima are cusps, so the ratio vanishes and no smooth minimum exists.
        let ok = a_minus.is_zero() && n_plus + m >= 1;
        return if ok {
            Ok(vec![RatioChoice {
                ratio: Q::zero(),
                m_plus: m,
                m_minus: 0,
            }])
        } else {
            Err(ConstraintError::EmptySpace)
        };
    }
    let mq = Q::from_integer(m);
    let lower = (a_minus + mq - a_plus) / Q::from_integer(2);
    let upper = a_minus + mq;
    let mut out = Vec::new();
    for m_plus in 0..=m {
        let mp = Q::from_integer(m_plus);
        let m_minus = m - m_plus;
        if mp <= lower || mp >= upper || n_plus + m_plus < 1 || n_minus + m_minus < 1 {
            continue;
        }
        out.push(RatioChoice {
            ratio: (a_minus + mq - mp) / (a_plus + mp),
            m_plus,
            m_minus,
        });
    }
    if out.is_empty() {
        Err(ConstraintError::EmptySpace)
    } else {
        Ok(out)
    }
}

/// Whether a single saddle of angle `alpha` with `p` smooth maxima and `q`
/// smooth minima can be realized on a genus `g` surface.
pub fn one_cone_admissible(genus: u32, alpha: u64, p: u64, q: u64) -> bool {
    let g = genus as u64;
    alpha >= 2 * g + 2
        && p > q
        && q > 0
        && p + q + 2 * g == alpha + 1
        && (g > 0 || q == 1 || !p.is_multiple_of(q))
}
