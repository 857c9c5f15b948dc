//! Scalar reverse-mode automatic differentiation on a Wengert tape.
//!
//! One optimization step records the whole forward computation (sigmoid
//! range mapping, forward kinematics, loss) as a linear tape of scalar
//! nodes and then sweeps it once in reverse to obtain the gradient of the
//! loss with respect to every input. A single backward pass differentiates
//! with respect to all `(n+1)·m` logits at once, which is why reverse mode
//! is used rather than forward mode.
//!
//! The tape is rebuilt on every iteration (dynamic-graph style). It is
//! single-owner: [`Scalar`]s borrow the tape they were recorded on and
//! cannot outlive it or cross threads. Independent tapes may run
//! concurrently.

use std::cell::{Cell, RefCell};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Errors raised by tape operations.
#[derive(Debug, Clone, PartialEq)]
pub enum AdError {
    /// A recorded operation produced a non-finite value or local partial.
    /// Carries the index of the first offending node and the operation name.
    NonFinite { node: usize, op: &'static str },
    /// `backward` was called with a root recorded on a different tape.
    ForeignRoot,
}

impl fmt::Display for AdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdError::NonFinite { node, op } => {
                write!(f, "non-finite result at tape node {node} (op {op})")
            }
            AdError::ForeignRoot => write!(f, "backward root does not belong to this tape"),
        }
    }
}

impl std::error::Error for AdError {}

#[derive(Clone, Copy)]
struct Node {
    parents: [usize; 2],
    partials: [f64; 2],
    arity: u8,
}

/// Append-only record of one forward computation.
///
/// Node parents always refer to earlier indices, so the node list is
/// topologically ordered by construction and the backward sweep is a plain
/// reverse iteration.
pub struct Tape {
    nodes: RefCell<Vec<Node>>,
    poison: Cell<Option<(usize, &'static str)>>,
}

impl Tape {
    pub fn new() -> Self {
        Tape {
            nodes: RefCell::new(Vec::new()),
            poison: Cell::new(None),
        }
    }

    /// Number of recorded nodes.
    pub fn len(&self) -> usize {
        self.nodes.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Drops all recorded nodes but keeps the allocation, so a fresh
    /// iteration can reuse the buffer. Requires `&mut self`: no live
    /// `Scalar` may still reference the old contents.
    pub fn reset(&mut self) {
        self.nodes.get_mut().clear();
        self.poison.set(None);
    }

    /// First node whose value or local partial came out non-finite, if any.
    pub fn poisoned(&self) -> Option<(usize, &'static str)> {
        self.poison.get()
    }

    /// Records an input (leaf) variable.
    ///
    /// Panics on a non-finite value: inputs are caller-supplied and a NaN
    /// here is a bug at the call site, not a numerical event on the tape.
    pub fn var(&self, value: f64) -> Scalar<'_> {
        assert!(value.is_finite(), "tape input must be finite, got {value}");
        let id = self.push("var", value, &[]);
        Scalar {
            value,
            node: Some((id, self)),
        }
    }

    fn push(&self, op: &'static str, value: f64, deps: &[(usize, f64)]) -> usize {
        let mut nodes = self.nodes.borrow_mut();
        let id = nodes.len();
        let mut node = Node {
            parents: [0; 2],
            partials: [0.0; 2],
            arity: deps.len() as u8,
        };
        let mut bad = !value.is_finite();
        for (slot, &(parent, partial)) in deps.iter().enumerate() {
            debug_assert!(parent < id, "parent must precede child");
            node.parents[slot] = parent;
            node.partials[slot] = partial;
            bad |= !partial.is_finite();
        }
        nodes.push(node);
        if bad && self.poison.get().is_none() {
            self.poison.set(Some((id, op)));
        }
        id
    }

    /// Reverse sweep from `root`: returns the adjoint `∂root/∂node` for
    /// every node recorded up to it.
    ///
    /// A constant root (no node id) yields an empty gradient. Fails if the
    /// root was recorded on another tape or the tape is poisoned by a
    /// non-finite intermediate.
    pub fn backward(&self, root: Scalar<'_>) -> Result<Gradients, AdError> {
        if let Some((node, op)) = self.poison.get() {
            return Err(AdError::NonFinite { node, op });
        }
        let root_id = match root.node {
            None => return Ok(Gradients { adjoints: Vec::new() }),
            Some((id, tape)) => {
                if !std::ptr::eq(tape, self) {
                    return Err(AdError::ForeignRoot);
                }
                id
            }
        };
        let nodes = self.nodes.borrow();
        let mut adjoints = vec![0.0; nodes.len()];
        adjoints[root_id] = 1.0;
        for id in (0..=root_id).rev() {
            let a = adjoints[id];
            if a == 0.0 {
                continue;
            }
            let node = nodes[id];
            for slot in 0..node.arity as usize {
                adjoints[node.parents[slot]] += node.partials[slot] * a;
            }
        }
        Ok(Gradients { adjoints })
    }
}

impl Default for Tape {
    fn default() -> Self {
        Self::new()
    }
}

/// Adjoints produced by [`Tape::backward`], indexed by node id.
#[derive(Debug)]
pub struct Gradients {
    adjoints: Vec<f64>,
}

impl Gradients {
    /// Adjoint of `x`, i.e. `∂root/∂x`. Constants and nodes recorded after
    /// the root contribute zero.
    pub fn wrt(&self, x: Scalar<'_>) -> f64 {
        match x.node {
            Some((id, _)) if id < self.adjoints.len() => self.adjoints[id],
            _ => 0.0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.adjoints.is_empty()
    }
}

/// A tape-tracked value. Plain constants carry no node id and no tape.
#[derive(Clone, Copy)]
pub struct Scalar<'t> {
    value: f64,
    node: Option<(usize, &'t Tape)>,
}

impl<'t> Scalar<'t> {
    /// A constant: participates in arithmetic but receives no gradient.
    pub fn constant(value: f64) -> Scalar<'t> {
        assert!(value.is_finite(), "constant must be finite, got {value}");
        Scalar { value, node: None }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    fn tape(self) -> Option<&'t Tape> {
        self.node.map(|(_, t)| t)
    }

    fn unary(self, op: &'static str, value: f64, partial: f64) -> Scalar<'t> {
        match self.node {
            None => Scalar { value, node: None },
            Some((id, tape)) => {
                let new = tape.push(op, value, &[(id, partial)]);
                Scalar {
                    value,
                    node: Some((new, tape)),
                }
            }
        }
    }

    fn binary(self, rhs: Scalar<'t>, op: &'static str, value: f64, da: f64, db: f64) -> Scalar<'t> {
        let tape = match (self.tape(), rhs.tape()) {
            (Some(a), Some(b)) => {
                assert!(std::ptr::eq(a, b), "operands recorded on different tapes");
                Some(a)
            }
            (a, b) => a.or(b),
        };
        let Some(tape) = tape else {
            return Scalar { value, node: None };
        };
        let mut deps = [(0usize, 0.0f64); 2];
        let mut n = 0;
        if let Some((id, _)) = self.node {
            deps[n] = (id, da);
            n += 1;
        }
        if let Some((id, _)) = rhs.node {
            deps[n] = (id, db);
            n += 1;
        }
        let new = tape.push(op, value, &deps[..n]);
        Scalar {
            value,
            node: Some((new, tape)),
        }
    }

    pub fn sin(self) -> Scalar<'t> {
        self.unary("sin", self.value.sin(), self.value.cos())
    }

    pub fn cos(self) -> Scalar<'t> {
        self.unary("cos", self.value.cos(), -self.value.sin())
    }

    /// `√x`; differentiable for x > 0 (the partial at 0 is infinite and
    /// poisons the tape).
    pub fn sqrt(self) -> Scalar<'t> {
        let v = self.value.sqrt();
        self.unary("sqrt", v, 0.5 / v)
    }

    /// Logistic sigmoid `σ(x) = 1/(1+e^{-x})` with partial `σ(1−σ)`.
    pub fn sigmoid(self) -> Scalar<'t> {
        let s = sigmoid(self.value);
        self.unary("sigmoid", s, s * (1.0 - s))
    }

    /// `x²` as a single node with partial `2x`.
    pub fn square(self) -> Scalar<'t> {
        self.unary("square", self.value * self.value, 2.0 * self.value)
    }
}

/// Plain logistic sigmoid, shared with the non-differentiating paths so the
/// two compute bitwise-identical values.
pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

impl fmt::Debug for Scalar<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node {
            Some((id, _)) => write!(f, "Scalar({} @ node {})", self.value, id),
            None => write!(f, "Scalar({} const)", self.value),
        }
    }
}

impl<'t> Add for Scalar<'t> {
    type Output = Scalar<'t>;
    fn add(self, rhs: Scalar<'t>) -> Scalar<'t> {
        self.binary(rhs, "add", self.value + rhs.value, 1.0, 1.0)
    }
}

impl<'t> Sub for Scalar<'t> {
    type Output = Scalar<'t>;
    fn sub(self, rhs: Scalar<'t>) -> Scalar<'t> {
        self.binary(rhs, "sub", self.value - rhs.value, 1.0, -1.0)
    }
}

impl<'t> Mul for Scalar<'t> {
    type Output = Scalar<'t>;
    fn mul(self, rhs: Scalar<'t>) -> Scalar<'t> {
        self.binary(rhs, "mul", self.value * rhs.value, rhs.value, self.value)
    }
}

impl<'t> Div for Scalar<'t> {
    type Output = Scalar<'t>;
    fn div(self, rhs: Scalar<'t>) -> Scalar<'t> {
        let v = self.value / rhs.value;
        self.binary(
            rhs,
            "div",
            v,
            1.0 / rhs.value,
            -self.value / (rhs.value * rhs.value),
        )
    }
}

impl<'t> Neg for Scalar<'t> {
    type Output = Scalar<'t>;
    fn neg(self) -> Scalar<'t> {
        self.unary("neg", -self.value, -1.0)
    }
}

impl<'t> Add<f64> for Scalar<'t> {
    type Output = Scalar<'t>;
    fn add(self, rhs: f64) -> Scalar<'t> {
        self + Scalar::constant(rhs)
    }
}

impl<'t> Sub<f64> for Scalar<'t> {
    type Output = Scalar<'t>;
    fn sub(self, rhs: f64) -> Scalar<'t> {
        self - Scalar::constant(rhs)
    }
}

impl<'t> Mul<f64> for Scalar<'t> {
    type Output = Scalar<'t>;
    fn mul(self, rhs: f64) -> Scalar<'t> {
        self * Scalar::constant(rhs)
    }
}

impl<'t> Div<f64> for Scalar<'t> {
    type Output = Scalar<'t>;
    fn div(self, rhs: f64) -> Scalar<'t> {
        self / Scalar::constant(rhs)
    }
}

impl<'t> Sub<Scalar<'t>> for f64 {
    type Output = Scalar<'t>;
    fn sub(self, rhs: Scalar<'t>) -> Scalar<'t> {
        Scalar::constant(self) - rhs
    }
}

impl<'t> Mul<Scalar<'t>> for f64 {
    type Output = Scalar<'t>;
    fn mul(self, rhs: Scalar<'t>) -> Scalar<'t> {
        Scalar::constant(self) * rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grad_of<'t>(tape: &'t Tape, root: Scalar<'t>, x: Scalar<'t>) -> f64 {
        tape.backward(root).unwrap().wrt(x)
    }

    #[test]
    fn mul_value_and_partials() {
        let tape = Tape::new();
        let a = tape.var(3.0);
        let b = tape.var(4.0);
        let c = a * b;
        assert_eq!(c.value(), 12.0);
        let g = tape.backward(c).unwrap();
        assert_eq!(g.wrt(a), 4.0);
        assert_eq!(g.wrt(b), 3.0);
    }

    #[test]
    fn sigmoid_at_zero() {
        let tape = Tape::new();
        let x = tape.var(0.0);
        let s = x.sigmoid();
        assert_eq!(s.value(), 0.5);
        assert_eq!(grad_of(&tape, s, x), 0.25);
    }

    #[test]
    fn sin_at_half_pi() {
        let tape = Tape::new();
        let x = tape.var(std::f64::consts::FRAC_PI_2);
        let s = x.sin();
        assert!((s.value() - 1.0).abs() < 1e-15);
        assert!(grad_of(&tape, s, x).abs() < 1e-15);
    }

    #[test]
    fn square_gradient() {
        let tape = Tape::new();
        let x = tape.var(3.0);
        let y = x.square();
        assert_eq!(y.value(), 9.0);
        assert_eq!(grad_of(&tape, y, x), 6.0);
    }

    #[test]
    fn product_rule_matches_double_angle() {
        // d/dx sin(x)cos(x) = cos(2x)
        let tape = Tape::new();
        let x = tape.var(0.7);
        let y = x.sin() * x.cos();
        let g = grad_of(&tape, y, x);
        assert!((g - (1.4f64).cos()).abs() < 1e-12);
        // and against a central finite difference
        let f = |v: f64| v.sin() * v.cos();
        let h = 1e-6;
        let fd = (f(0.7 + h) - f(0.7 - h)) / (2.0 * h);
        assert!((g - fd).abs() < 1e-9);
    }

    #[test]
    fn constant_root_has_empty_gradient() {
        let tape = Tape::new();
        let _x = tape.var(1.0);
        let c = Scalar::constant(5.0);
        let g = tape.backward(c).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn fanout_adjoints_accumulate() {
        let tape = Tape::new();
        let x = tape.var(1.5);
        let y = x + x;
        assert_eq!(grad_of(&tape, y, x), 2.0);
    }

    #[test]
    fn constants_contribute_zero_gradient() {
        let tape = Tape::new();
        let x = tape.var(2.0);
        let c = Scalar::constant(10.0);
        let y = x * c + c;
        assert_eq!(y.value(), 30.0);
        let g = tape.backward(y).unwrap();
        assert_eq!(g.wrt(x), 10.0);
        assert_eq!(g.wrt(c), 0.0);
    }

    #[test]
    fn foreign_root_rejected() {
        let t1 = Tape::new();
        let t2 = Tape::new();
        let x = t1.var(1.0);
        assert!(matches!(t2.backward(x), Err(AdError::ForeignRoot)));
    }

    #[test]
    fn division_by_zero_poisons_tape() {
        let tape = Tape::new();
        let a = tape.var(1.0);
        let b = tape.var(0.0);
        let q = a / b;
        assert!(tape.poisoned().is_some());
        match tape.backward(q) {
            Err(AdError::NonFinite { op, .. }) => assert_eq!(op, "div"),
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_at_zero_poisons_tape() {
        let tape = Tape::new();
        let x = tape.var(0.0);
        let _ = x.sqrt();
        assert!(tape.poisoned().is_some());
    }

    #[test]
    fn poison_reports_first_offender() {
        let tape = Tape::new();
        let a = tape.var(1.0);
        let b = tape.var(0.0);
        let bad = a / b; // node 2
        let _worse = bad * bad;
        let (node, op) = tape.poisoned().unwrap();
        assert_eq!(node, 2);
        assert_eq!(op, "div");
    }

    #[test]
    fn composed_expression_matches_finite_difference() {
        let f64_f = |x: f64, y: f64| {
            let s = sigmoid(x * y);
            (x.sin() + y.cos() * s).sqrt() / (1.0 + x * x)
        };
        fn build<'t>(tape: &'t Tape, xv: f64, yv: f64) -> (Scalar<'t>, Scalar<'t>, Scalar<'t>) {
            let x = tape.var(xv);
            let y = tape.var(yv);
            let s = (x * y).sigmoid();
            let root = (x.sin() + y.cos() * s).sqrt() / (x.square() + 1.0);
            (x, y, root)
        }
        for &(xv, yv) in &[(0.8, 0.3), (1.2, -0.4), (0.9, 0.1)] {
            let tape = Tape::new();
            let (x, y, root) = build(&tape, xv, yv);
            let g = tape.backward(root).unwrap();
            let h = 1e-5;
            let fdx = (f64_f(xv + h, yv) - f64_f(xv - h, yv)) / (2.0 * h);
            let fdy = (f64_f(xv, yv + h) - f64_f(xv, yv - h)) / (2.0 * h);
            let gx = g.wrt(x);
            let gy = g.wrt(y);
            assert!((gx - fdx).abs() <= 1e-4 * fdx.abs().max(1.0), "gx={gx} fd={fdx}");
            assert!((gy - fdy).abs() <= 1e-4 * fdy.abs().max(1.0), "gy={gy} fd={fdy}");
        }
    }

    #[test]
    fn replay_is_bitwise_deterministic() {
        let run = || {
            let tape = Tape::new();
            let x = tape.var(0.37);
            let y = tape.var(-1.9);
            let root = ((x.sin() * y).sigmoid() + x.cos().square()).sqrt() / (y.square() + 2.0);
            let g = tape.backward(root).unwrap();
            (
                root.value().to_bits(),
                g.wrt(x).to_bits(),
                g.wrt(y).to_bits(),
            )
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn reset_reuses_tape() {
        let mut tape = Tape::new();
        let v1 = {
            let x = tape.var(2.0);
            (x * x).value()
        };
        tape.reset();
        assert!(tape.is_empty());
        let x = tape.var(3.0);
        let y = x * x;
        assert_eq!(v1, 4.0);
        assert_eq!(y.value(), 9.0);
        assert_eq!(grad_of(&tape, y, x), 6.0);
    }
}
