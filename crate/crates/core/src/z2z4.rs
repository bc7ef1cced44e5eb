//! Structure machinery special to ℤ₂×ℤ₄: the four cycle-form templates,
//! classification of every orthomorphism into exactly one form, the
//! six-row partner table, the conjugating involution α and the 4-cycle
//! decomposition of the orthomorphism graph.
//!
//! Operations here machine-check structural statements; when an input
//! that is a genuine orthomorphism of ℤ₂×ℤ₄ fails to fit the expected
//! structure the functions panic with the violated statement id
//! (THM1, TAB1, COR4) rather than returning a soft failure.

use std::sync::Arc;

use crate::graph::{are_orthogonal, homology};
use crate::group::{is_automorphism, FiniteGroup, GroupMap};
use crate::ortho::{order_partition, Orthomorphism};
use crate::{Error, Result};

/// Cycle-form tag: which of the four templates an orthomorphism matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Form {
    I,
    II,
    III,
    IV,
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Form::I => write!(f, "I"),
            Form::II => write!(f, "II"),
            Form::III => write!(f, "III"),
            Form::IV => write!(f, "IV"),
        }
    }
}

/// Template parameters: `a` of order 4, `x` the unique element with
/// `o(x) = o(θ(x)) = 2`, and `theta_x = θ(x)`.
///
/// Forms I and IV require `x·θ(x) = a²`; forms II and III require
/// `x·θ(x) ≠ a²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleForm {
    pub form: Form,
    pub a: usize,
    pub x: usize,
    pub theta_x: usize,
}

/// Symbols the cycle templates are written in.
#[derive(Debug, Clone, Copy)]
enum Sym {
    /// a
    A,
    /// a·x
    Ax,
    /// a·x·θ(x)
    Axt,
    /// x·θ(x)
    Xt,
    /// a·θ(x)
    At,
    /// x
    X,
    /// θ(x)
    Tx,
}

use Sym::{At, Ax, Axt, Tx, X, Xt, A};

const FORM_I: &[&[Sym]] = &[&[A, Ax, Axt, Xt, At, X, Tx]];
const FORM_II: &[&[Sym]] = &[&[A, Ax, Axt, Xt], &[Tx, At, X]];
const FORM_III: &[&[Sym]] = &[&[A, Ax, Axt, X, Tx], &[At, Xt]];
const FORM_IV: &[&[Sym]] = &[&[A, Ax, Axt, X, Tx, At, Xt]];

fn form_template(form: Form) -> &'static [&'static [Sym]] {
    match form {
        Form::I => FORM_I,
        Form::II => FORM_II,
        Form::III => FORM_III,
        Form::IV => FORM_IV,
    }
}

/// Whether forms I/IV (`x·θ(x) = a²`) or II/III apply.
fn needs_square(form: Form) -> bool {
    matches!(form, Form::I | Form::IV)
}

/// Partner templates, keyed by the classified form of θ₁ and — for
/// forms II and III — by which of x, θ₁(x) equals a².
const ROW_1: (&[&[Sym]], &[&[Sym]]) =
    (&[&[At, Axt, A, Tx], &[X, Xt, Ax]], &[&[Axt, At, Ax, Tx], &[X, Xt, A]]);
const ROW_2: (&[&[Sym]], &[&[Sym]]) =
    (&[&[At, Axt, A, X, Xt], &[Ax, Tx]], &[&[Axt, At, Ax, X, Xt], &[A, Tx]]);
const ROW_3: (&[&[Sym]], &[&[Sym]]) = ROW_2;
const ROW_4: (&[&[Sym]], &[&[Sym]]) =
    (&[&[At, Axt, A, Tx, Ax, X, Xt]], &[&[Axt, At, Ax, Tx, A, X, Xt]]);
const ROW_5: (&[&[Sym]], &[&[Sym]]) =
    (&[&[At, Axt, A, Tx], &[Ax, X, Xt]], &[&[Axt, At, Ax, Tx], &[A, X, Xt]]);
const ROW_6: (&[&[Sym]], &[&[Sym]]) =
    (&[&[At, Axt, A, X, Xt, Ax, Tx]], &[&[Axt, At, Ax, X, Xt, A, Tx]]);

fn eval(sym: Sym, g: &FiniteGroup, a: usize, x: usize, tx: usize) -> usize {
    match sym {
        A => a,
        Ax => g.mul(a, x),
        Axt => g.mul(g.mul(a, x), tx),
        Xt => g.mul(x, tx),
        At => g.mul(a, tx),
        X => x,
        Tx => tx,
    }
}

fn instantiate(g: &FiniteGroup, cycles: &[&[Sym]], a: usize, x: usize, tx: usize) -> Vec<usize> {
    let mut images: Vec<usize> = (0..g.order()).collect();
    for cycle in cycles {
        let elems: Vec<usize> = cycle.iter().map(|&s| eval(s, g, a, x, tx)).collect();
        for k in 0..elems.len() {
            images[elems[k]] = elems[(k + 1) % elems.len()];
        }
    }
    images
}

/// True for groups with the ℤ₂×ℤ₄ order profile: order 8 with exactly
/// three elements of order 2 and four of order 4.
pub fn is_z2z4_like(g: &FiniteGroup) -> bool {
    g.order() == 8
        && (0..8).filter(|&i| g.element_order(i) == 2).count() == 3
        && (0..8).filter(|&i| g.element_order(i) == 4).count() == 4
}

fn check_parameters(g: &FiniteGroup, cf: &CycleForm) -> Result<()> {
    let n = g.order();
    assert!(cf.a < n && cf.x < n && cf.theta_x < n, "element index out of range");
    if g.element_order(cf.a) != 4 {
        return Err(Error::FormConstraint(format!("a = {} must have order 4", g.label(cf.a))));
    }
    if g.element_order(cf.x) != 2 {
        return Err(Error::FormConstraint(format!("x = {} must have order 2", g.label(cf.x))));
    }
    if g.element_order(cf.theta_x) != 2 {
        return Err(Error::FormConstraint(format!(
            "theta(x) = {} must have order 2",
            g.label(cf.theta_x)
        )));
    }
    if cf.x == cf.theta_x {
        return Err(Error::FormConstraint("x and theta(x) must differ".into()));
    }
    let xt = g.mul(cf.x, cf.theta_x);
    let asq = g.mul(cf.a, cf.a);
    match (needs_square(cf.form), xt == asq) {
        (true, false) => Err(Error::FormConstraint(format!(
            "form {} requires x*theta(x) = a^2, got {} != {}",
            cf.form,
            g.label(xt),
            g.label(asq)
        ))),
        (false, true) => Err(Error::FormConstraint(format!(
            "form {} requires x*theta(x) != a^2, got {}",
            cf.form,
            g.label(xt)
        ))),
        _ => Ok(()),
    }
}

/// Instantiates the cycle template for `cf` over `group`.
///
/// Errors name the violated parameter constraint; a valid parameter set
/// always yields an orthomorphism (THM1), asserted on the way out.
pub fn construct_form(group: &Arc<FiniteGroup>, cf: &CycleForm) -> Result<Orthomorphism> {
    check_parameters(group, cf)?;
    let images = instantiate(group, form_template(cf.form), cf.a, cf.x, cf.theta_x);
    Ok(Orthomorphism::new(Arc::clone(group), images)
        .expect("THM1 violated: template instance is not an orthomorphism"))
}

/// Recovers (a, x, θ(x)): x is the unique A₂₂ element and a the unique
/// element of A₄₄ not in θ(A₄₄).
///
/// Panics (COR1 / PROP1) when the partition does not have the shape
/// every orthomorphism of ℤ₂×ℤ₄ must have.
fn canonical_parameters(theta: &Orthomorphism) -> (usize, usize, usize) {
    let p = order_partition(theta).expect("exponent-4 group required");
    assert_eq!(p.a22.len(), 1, "COR1 violated: |A22| = {} != 1", p.a22.len());
    let x = p.a22[0];
    let image44: Vec<usize> = p.a44.iter().map(|&i| theta.apply(i)).collect();
    let rest: Vec<usize> = p.a44.iter().copied().filter(|i| !image44.contains(i)).collect();
    assert_eq!(rest.len(), 1, "PROP1 violated: |A44 \\ theta(A44)| = {} != 1", rest.len());
    (rest[0], x, theta.apply(x))
}

/// Matches `theta` against the four templates; exactly one fits.
///
/// Panics with THM1 when zero or several templates match — that would
/// falsify the classification, so it is a fatal verification failure.
pub fn classify_form(theta: &Orthomorphism) -> CycleForm {
    let g = theta.group();
    let (a, x, tx) = canonical_parameters(theta);
    let square = g.mul(x, tx) == g.mul(a, a);
    let mut matched = None;
    for form in [Form::I, Form::II, Form::III, Form::IV] {
        if needs_square(form) != square {
            continue;
        }
        if instantiate(g, form_template(form), a, x, tx) == theta.images() {
            assert!(matched.is_none(), "THM1 violated: templates overlap");
            matched = Some(form);
        }
    }
    let form = matched.unwrap_or_else(|| panic!("THM1 violated: no template matches {:?}", theta.images()));
    CycleForm { form, a, x, theta_x: tx }
}

/// The partition predicate `|A₄₄ ∩ A₄₄′| = 0` for two distinct
/// orthomorphisms.
///
/// Every adjacent pair satisfies it (PROP2/PROP3); the converse fails —
/// disjoint A₄₄ sets do not force orthogonality (see PROP4 in the
/// statement catalog), so this is a necessary test, not an equivalent one.
///
/// Panics when `t1 == t2`; the relation concerns distinct vertices.
pub fn intersection_adjacency(t1: &Orthomorphism, t2: &Orthomorphism) -> bool {
    assert!(t1 != t2, "intersection adjacency is defined for distinct orthomorphisms");
    let p1 = order_partition(t1).expect("exponent-4 group required");
    let p2 = order_partition(t2).expect("exponent-4 group required");
    !p1.a44.iter().any(|i| p2.a44.contains(i))
}

/// Instantiates the partner row matching `theta`'s form: the two
/// returned orthomorphisms are orthogonal to `theta` and are exactly
/// its two graph neighbours.
///
/// Panics with TAB1 when no row applies or an instantiated partner
/// fails its guarantees.
pub fn predicted_partners(theta: &Orthomorphism) -> (Orthomorphism, Orthomorphism) {
    let g = theta.group();
    let cf = classify_form(theta);
    let asq = g.mul(cf.a, cf.a);
    let row = match cf.form {
        Form::I => ROW_1,
        Form::IV => ROW_2,
        Form::II | Form::III => {
            let by_x = cf.x == asq;
            let by_tx = cf.theta_x == asq;
            assert!(
                by_x ^ by_tx,
                "TAB1 violated: exactly one of x, theta(x) must equal a^2 for form {}",
                cf.form
            );
            match (cf.form, by_x) {
                (Form::II, true) => ROW_3,
                (Form::II, false) => ROW_4,
                (Form::III, true) => ROW_5,
                (Form::III, false) => ROW_6,
                _ => unreachable!(),
            }
        }
    };
    let build = |cycles: &[&[Sym]]| {
        Orthomorphism::new(Arc::clone(g), instantiate(g, cycles, cf.a, cf.x, cf.theta_x))
            .expect("TAB1 violated: partner template is not an orthomorphism")
    };
    let (psi1, psi2) = (build(row.0), build(row.1));
    assert!(
        are_orthogonal(theta, &psi1) && are_orthogonal(theta, &psi2),
        "TAB1 violated: partner not orthogonal to theta"
    );
    (psi1, psi2)
}

/// The involution `(a, ax)(axθ(x), aθ(x))` conjugating the two partners
/// of `theta` into each other; verified to be a group automorphism.
pub fn alpha_of(theta: &Orthomorphism) -> GroupMap {
    let g = theta.group();
    let cf = classify_form(theta);
    let (a, x, tx) = (cf.a, cf.x, cf.theta_x);
    let ax = g.mul(a, x);
    let axt = g.mul(ax, tx);
    let at = g.mul(a, tx);
    let mut images: Vec<usize> = (0..g.order()).collect();
    images.swap(a, ax);
    images.swap(axt, at);
    let alpha = GroupMap::new(images);
    assert!(is_automorphism(g, &alpha), "COR4 violated: alpha is not an automorphism");
    assert_eq!(
        alpha.compose(&alpha),
        GroupMap::identity(g.order()),
        "COR4 violated: alpha is not an involution"
    );
    alpha
}

/// The 4-cycle through `theta`: `(θ, ψ₁, θ^α, ψ₂)` with edges
/// θψ₁, ψ₁θ^α, θ^αψ₂, ψ₂θ and non-edges θθ^α, ψ₁ψ₂.
///
/// Panics with COR4 on any structural violation.
pub fn four_cycle_of(theta: &Orthomorphism) -> [Orthomorphism; 4] {
    let (psi1, psi2) = predicted_partners(theta);
    let alpha = alpha_of(theta);
    let theta_alpha = homology(&alpha, theta).expect("alpha is a verified automorphism");

    let cycle = [theta.clone(), psi1, theta_alpha, psi2];
    for i in 0..4 {
        for j in i + 1..4 {
            assert!(cycle[i] != cycle[j], "COR4 violated: 4-cycle vertices not distinct");
        }
    }
    for k in 0..4 {
        assert!(
            are_orthogonal(&cycle[k], &cycle[(k + 1) % 4]),
            "COR4 violated: missing edge in the 4-cycle"
        );
    }
    assert!(
        !are_orthogonal(&cycle[0], &cycle[2]) && !are_orthogonal(&cycle[1], &cycle[3]),
        "COR4 violated: chord inside the 4-cycle"
    );
    cycle
}
