//! Finite abelian groups presented as products of cyclic factors.
//!
//! A group `Z_{n_1} x ... x Z_{n_m}` is identified with its Pontryagin dual
//! coordinatewise: the character indexed by `k` evaluates as
//! `k(t) = exp(2 pi i sum_i k_i t_i / n_i)`. Elements and characters are
//! enumerated lexicographically (first coordinate most significant), which
//! makes the character table of `Z_2^n` the Littlewood matrix exactly.
//!
//! Haar weights are stored as exact rationals `1/|G|`; character values are
//! computed from an exact rational phase so that quarter-turn phases
//! (denominator 1, 2 or 4) produce exact `1, -1, i, -i`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Default bound on the group order accepted from external input. The CLI
/// overrides it via `--cap` or the `SCHATTEN_HARMONICS_CAP` variable.
pub const DEFAULT_ORDER_CAP: u64 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic factor order {0} is below 2")]
    FactorTooSmall(u32),
    #[error("a group spec needs at least one cyclic factor")]
    Empty,
    #[error("group order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("group order overflows u64")]
    Overflow,
    #[error("coordinate count {got} does not match {expected} cyclic factors")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("cannot parse group spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A finite abelian group `Z_{n_1} x ... x Z_{n_m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    cyclic_orders: Vec<u32>,
    order: u64,
}

impl GroupSpec {
    /// Builds a spec from cyclic factor orders, in declaration order.
    pub fn new(cyclic_orders: impl Into<Vec<u32>>) -> Result<Self, GroupError> {
        let cyclic_orders = cyclic_orders.into();
        if cyclic_orders.is_empty() {
            return Err(GroupError::Empty);
        }
        let mut order: u64 = 1;
        for &n in &cyclic_orders {
            if n < 2 {
                return Err(GroupError::FactorTooSmall(n));
            }
            order = order.checked_mul(n as u64).ok_or(GroupError::Overflow)?;
        }
        Ok(GroupSpec {
            cyclic_orders,
            order,
        })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        GroupSpec::new(vec![n])
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn factor_count(&self) -> usize {
        self.cyclic_orders.len()
    }

    /// The identity element (all zeros).
    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.cyclic_orders.len()],
        }
    }

    /// The trivial character (indexed by the identity).
    pub fn trivial_character(&self) -> Character {
        Character {
            index: self.identity(),
        }
    }

    /// All elements in lexicographic order, identity first.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut coords = vec![0u32; self.cyclic_orders.len()];
        loop {
            out.push(GroupElement {
                coords: coords.clone(),
            });
            // Odometer increment, least-significant coordinate last.
            let mut i = self.cyclic_orders.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < self.cyclic_orders[i] {
                    break;
                }
                coords[i] = 0;
                if i == 0 {
                    return out;
                }
            }
        }
    }

    /// All characters, indexed by the dual group in the same lexicographic
    /// order as the elements.
    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .into_iter()
            .map(|index| Character { index })
            .collect()
    }

    /// Lexicographic rank of an element.
    pub fn element_index(&self, e: &GroupElement) -> Result<usize, GroupError> {
        self.check_coords(&e.coords)?;
        let mut idx: u64 = 0;
        for (c, n) in e.coords.iter().zip(self.cyclic_orders.iter()) {
            idx = idx * (*n as u64) + (*c as u64);
        }
        Ok(idx as usize)
    }

    /// Builds an element from coordinates, reducing each mod its factor order.
    pub fn element(&self, coords: impl Into<Vec<u32>>) -> Result<GroupElement, GroupError> {
        let mut coords = coords.into();
        if coords.len() != self.cyclic_orders.len() {
            return Err(GroupError::DimensionMismatch {
                got: coords.len(),
                expected: self.cyclic_orders.len(),
            });
        }
        for (c, n) in coords.iter_mut().zip(self.cyclic_orders.iter()) {
            *c %= *n;
        }
        Ok(GroupElement { coords })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_coords(&a.coords)?;
        self.check_coords(&b.coords)?;
        let coords = a
            .coords
            .iter()
            .zip(b.coords.iter())
            .zip(self.cyclic_orders.iter())
            .map(|((x, y), n)| (x + y) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_coords(&a.coords)?;
        let coords = a
            .coords
            .iter()
            .zip(self.cyclic_orders.iter())
            .map(|(x, n)| (n - x) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    /// The normalized Haar weight `1/|G|` attached to every element.
    pub fn haar_weight(&self) -> HaarWeight {
        HaarWeight {
            weight: Ratio::new(1, self.order),
        }
    }

    /// Evaluates the character `k` at the element `theta`.
    ///
    /// The phase `sum_i k_i theta_i / n_i` is accumulated as an exact rational
    /// and reduced mod 1, so equal phases give bit-equal values and phases
    /// with denominator 1, 2 or 4 give exact `1, -1, i, -i`.
    pub fn character_value(
        &self,
        k: &Character,
        theta: &GroupElement,
    ) -> Result<Complex64, GroupError> {
        self.check_coords(&k.index.coords)?;
        self.check_coords(&theta.coords)?;
        let mut phase: Ratio<u128> = Ratio::new(0, 1);
        for ((ki, ti), ni) in k
            .index
            .coords
            .iter()
            .zip(theta.coords.iter())
            .zip(self.cyclic_orders.iter())
        {
            phase += Ratio::new((*ki as u128) * (*ti as u128), *ni as u128);
        }
        phase = phase.fract();
        Ok(unit_from_phase(phase))
    }

    /// The full `|G| x |G|` table of character values: rows are characters,
    /// columns are elements, both in lexicographic order.
    pub fn character_table(&self) -> DMatrix<Complex64> {
        let elements = self.elements();
        let characters = self.characters();
        let n = self.order as usize;
        DMatrix::from_fn(n, n, |i, j| {
            self.character_value(&characters[i], &elements[j])
                .expect("indices generated from this spec")
        })
    }

    /// Parses specs like `Z6`, `Z2^3`, `Z2xZ4`; rejects orders above `cap`.
    pub fn parse(input: &str, cap: u64) -> Result<Self, GroupError> {
        match parse_group(input, cap)? {
            ParsedGroup::Finite(spec) => Ok(spec),
            ParsedGroup::Circle(circle) => Ok(circle.spec().clone()),
        }
    }

    fn check_coords(&self, coords: &[u32]) -> Result<(), GroupError> {
        if coords.len() != self.cyclic_orders.len() {
            return Err(GroupError::DimensionMismatch {
                got: coords.len(),
                expected: self.cyclic_orders.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &n in &self.cyclic_orders {
            match runs.last_mut() {
                Some((order, count)) if *order == n => *count += 1,
                _ => runs.push((n, 1)),
            }
        }
        let parts: Vec<String> = runs
            .iter()
            .map(|(n, c)| {
                if *c == 1 {
                    format!("Z{n}")
                } else {
                    format!("Z{n}^{c}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An element of a finite abelian group; coordinates are reduced mod the
/// respective factor orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A character of the group, indexed by an element of the (coordinatewise
/// identified) dual group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    index: GroupElement,
}

impl Character {
    pub fn new(index: GroupElement) -> Self {
        Character { index }
    }

    pub fn index(&self) -> &GroupElement {
        &self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index.is_identity()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k{}", self.index)
    }
}

/// The normalized Haar weight of a finite group: the exact rational `1/|G|`
/// attached to every element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HaarWeight {
    weight: Ratio<u64>,
}

impl HaarWeight {
    pub fn value(&self) -> Ratio<u64> {
        self.weight
    }

    pub fn as_f64(&self) -> f64 {
        *self.weight.numer() as f64 / *self.weight.denom() as f64
    }

    /// Sums the weight over `count` elements, exactly.
    pub fn total(&self, count: u64) -> Ratio<u64> {
        self.weight * Ratio::from_integer(count)
    }
}

/// `exp(2 pi i phase)` for a rational phase in [0, 1), with exact values at
/// quarter turns.
fn unit_from_phase(phase: Ratio<u128>) -> Complex64 {
    let (num, den) = (*phase.numer(), *phase.denom());
    match (num, den) {
        (0, _) => Complex64::new(1.0, 0.0),
        (1, 2) => Complex64::new(-1.0, 0.0),
        (1, 4) => Complex64::new(0.0, 1.0),
        (3, 4) => Complex64::new(0.0, -1.0),
        _ => {
            let angle = 2.0 * std::f64::consts::PI * (num as f64 / den as f64);
            Complex64::new(angle.cos(), angle.sin())
        }
    }
}

/// The Littlewood matrix `L_n` (entries +-1, size `2^n`), built by the block
/// recursion `L_{n+1} = [[L_n, L_n], [L_n, -L_n]]`.
pub fn littlewood_matrix(n: u32, cap: u64) -> Result<DMatrix<i64>, GroupError> {
    if n == 0 {
        return Err(GroupError::Parse {
            input: format!("L_{n}"),
            reason: "Littlewood index starts at 1".into(),
        });
    }
    let size = 1u64
        .checked_shl(n)
        .filter(|s| *s <= cap)
        .ok_or(GroupError::CapExceeded {
            order: 1u64.checked_shl(n).unwrap_or(u64::MAX),
            cap,
        })?;
    let mut m = DMatrix::<i64>::from_row_slice(2, 2, &[1, 1, 1, -1]);
    while (m.nrows() as u64) < size {
        let k = m.nrows();
        let mut next = DMatrix::<i64>::zeros(2 * k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                let v = m[(i, j)];
                next[(i, j)] = v;
                next[(i, j + k)] = v;
                next[(i + k, j)] = v;
                next[(i + k, j + k)] = -v;
            }
        }
        m = next;
    }
    Ok(m)
}

/// A uniform discretization of the circle group: the group `Z_N` together
/// with the node angles `2 pi m / N`.
///
/// Coefficients of trigonometric-polynomial fields of degree below `N/2` are
/// reproduced exactly by the induced quadrature; higher frequencies alias.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleDiscretization {
    spec: GroupSpec,
}

impl CircleDiscretization {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn node_count(&self) -> u32 {
        self.spec.order() as u32
    }

    /// Node angles `2 pi m / N` in element order.
    pub fn angles(&self) -> Vec<f64> {
        let n = self.spec.order();
        (0..n)
            .map(|m| 2.0 * std::f64::consts::PI * m as f64 / n as f64)
            .collect()
    }

    /// The character aliasing the circle character `e^{i k theta}`.
    pub fn character_for_frequency(&self, k: i64) -> Character {
        let n = self.spec.order() as i64;
        let idx = k.rem_euclid(n) as u32;
        Character {
            index: GroupElement { coords: vec![idx] },
        }
    }

    /// The signed frequency aliased by character index `m` (the
    /// representative in `(-N/2, N/2]`).
    pub fn frequency_for_index(&self, m: u32) -> i64 {
        let n = self.spec.order() as i64;
        let m = m as i64 % n;
        if 2 * m > n {
            m - n
        } else {
            m
        }
    }
}

impl fmt::Display for CircleDiscretization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T@{}", self.spec.order())
    }
}

/// Builds the `N`-node circle discretization (`N >= 2`).
pub fn circle_discretization(n: u32) -> Result<CircleDiscretization, GroupError> {
    Ok(CircleDiscretization {
        spec: GroupSpec::cyclic(n)?,
    })
}

/// Result of parsing a group string: either a finite group or a discretized
/// circle.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedGroup {
    Finite(GroupSpec),
    Circle(CircleDiscretization),
}

impl ParsedGroup {
    /// The finite group backing either variant.
    pub fn spec(&self) -> &GroupSpec {
        match self {
            ParsedGroup::Finite(s) => s,
            ParsedGroup::Circle(c) => c.spec(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ParsedGroup::Finite(s) => s.to_string(),
            ParsedGroup::Circle(c) => c.to_string(),
        }
    }
}

/// Parses `"Z6"`, `"Z2^3"`, `"Z2xZ4"` or `"T@64"`, enforcing the order cap.
pub fn parse_group(input: &str, cap: u64) -> Result<ParsedGroup, GroupError> {
    let s = input.trim();
    let parse_err = |reason: &str| GroupError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };

    if let Some(rest) = s.strip_prefix('T').or_else(|| s.strip_prefix('t')) {
        let rest = rest
            .strip_prefix('@')
            .ok_or_else(|| parse_err("expected T@<nodes>"))?;
        let n: u32 = rest
            .parse()
            .map_err(|_| parse_err("node count must be an integer"))?;
        if (n as u64) > cap {
            return Err(GroupError::CapExceeded {
                order: n as u64,
                cap,
            });
        }
        return Ok(ParsedGroup::Circle(circle_discretization(n)?));
    }

    let mut orders: Vec<u32> = Vec::new();
    for factor in s.split(['x', 'X']) {
        let factor = factor.trim();
        let body = factor
            .strip_prefix('Z')
            .or_else(|| factor.strip_prefix('z'))
            .ok_or_else(|| parse_err("factors must look like Z<n> or Z<n>^<m>"))?;
        let (base, power) = match body.split_once('^') {
            Some((b, p)) => (
                b,
                p.parse::<u32>()
                    .map_err(|_| parse_err("exponent must be an integer"))?,
            ),
            None => (body, 1),
        };
        if power == 0 {
            return Err(parse_err("exponent must be at least 1"));
        }
        let n: u32 = base
            .parse()
            .map_err(|_| parse_err("factor order must be an integer"))?;
        for _ in 0..power {
            orders.push(n);
        }
    }
    let spec = GroupSpec::new(orders)?;
    if spec.order() > cap {
        return Err(GroupError::CapExceeded {
            order: spec.order(),
            cap,
        });
    }
    Ok(ParsedGroup::Finite(spec))
}
