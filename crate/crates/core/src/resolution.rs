//! Exhaustive slice checks for the free resolution of the two-generator
//! parafree example
//!
//! ```text
//! A = k<x1, x2, y1, y2 | x1*x2 + y1^2 - y1, x2*x1 + y2^2 - y2,
//!                        x1*y2 - y1*x1, x2*y1 - y2*x2>
//! ```
//!
//! Elements are kept in classical normal form for deg-lex `x1 > x2 > y1 > y2`,
//! over the basis of words avoiding `x1*x2`, `x2*x1`, `x1*y2`, `x2*y1`.
//! The operator `c_l` strips a leading `l` from a normal word and kills every
//! other word.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::expr::parse_poly;
use crate::field::{Coeff, CoefficientField};
use crate::gsbases::{check_classical, normal_words};
use crate::linalg::{rank, SparseVec};
use crate::poly::{LeadMode, Poly};
use crate::presentation::Presentation;
use crate::quotients::build_truncated_quotient;
use crate::rewrite::{reduce_max, ReduceOptions, RewriteSystem};
use crate::words::{Alphabet, BoundMode, Letter, OrderSpec, Word};

pub const X1: Letter = 0;
pub const X2: Letter = 1;
pub const Y1: Letter = 2;
pub const Y2: Letter = 3;

pub const RELATIONS: [&str; 4] = ["x1*x2 + y1^2 - y1", "x2*x1 + y2^2 - y2", "x1*y2 - y1*x1", "x2*y1 - y2*x2"];

/// The main example algebra with unique normal forms.
#[derive(Clone, Debug)]
pub struct MainExampleAlgebra {
    presentation: Presentation,
    system: RewriteSystem,
}

impl MainExampleAlgebra {
    /// Builds the algebra and refuses to continue unless the relations are a
    /// Gröbner–Shirshov basis, so that normal forms are unique.
    pub fn new() -> Result<Self, Error> {
        let alphabet = Alphabet::new([("x1", 1), ("x2", 1), ("y1", 3), ("y2", 3)])?;
        let presentation = Presentation::parse(
            alphabet,
            CoefficientField::Rational,
            &RELATIONS,
            OrderSpec::deg_lex(vec![X1, X2, Y1, Y2])?,
            OrderSpec::theta_lex(vec![Y1, Y2, X1, X2], vec![1, 1, 3, 3])?,
        )?;
        let system =
            RewriteSystem::new(presentation.relations().to_vec(), presentation.order_max().clone(), LeadMode::Max)?;
        if !check_classical(&system, false).is_gs() {
            return Err(Error::Precondition("relations are not a Gröbner–Shirshov basis".into()));
        }
        Ok(MainExampleAlgebra { presentation, system })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.presentation.alphabet()
    }

    pub fn field(&self) -> CoefficientField {
        self.presentation.field()
    }

    pub fn relation(&self, i: usize) -> &Poly {
        &self.presentation.relations()[i]
    }

    /// Parses an element; the result is not reduced.
    pub fn parse(&self, text: &str) -> Poly {
        parse_poly(text, self.alphabet(), self.field()).expect("valid element")
    }

    pub fn nf(&self, f: &Poly) -> Poly {
        reduce_max(f, &self.system, &ReduceOptions::default()).remainder
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.nf(&a.mul(b))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.system.is_normal_word(w)
    }

    /// Normal words of length at most `max_length`, ascending in deg-lex.
    pub fn normal_words(&self, max_length: usize) -> Vec<Word> {
        let mut ws = normal_words(self.system.leads(), self.alphabet(), max_length as u64, BoundMode::ByLength)
            .expect("small enumeration");
        ws.sort_by(|u, v| self.presentation.order_max().cmp_words(u, v));
        ws
    }

    pub fn render(&self, f: &Poly) -> String {
        f.render(self.alphabet(), Some(self.presentation.order_max()))
    }
}

/// `c_l` applied to an element in normal form.
pub fn c_operator(l: Letter, a: &Poly) -> Poly {
    Poly::from_terms(
        a.field(),
        a.terms().filter(|(w, _)| w.first() == Some(l)).map(|(w, c)| (w.suffix_from(1), c.clone())),
    )
}

/// Linear operators on the algebra built from left multiplications, the
/// `c_l`, the augmentation and the identity.
#[derive(Clone, Debug)]
pub enum Operator {
    Zero,
    Identity,
    /// `a -> eps(a) * 1`.
    Augmentation,
    LeftMul(Poly),
    C(Letter),
    /// `Compose(f, g)` is `a -> f(g(a))`.
    Compose(Box<Operator>, Box<Operator>),
    Sum(Vec<Operator>),
    Scale(Coeff, Box<Operator>),
}

impl Operator {
    pub fn compose(f: Operator, g: Operator) -> Operator {
        Operator::Compose(Box::new(f), Box::new(g))
    }

    /// `a -> x * f(a)`.
    pub fn then_left_mul(x: Poly, f: Operator) -> Operator {
        Operator::compose(Operator::LeftMul(x), f)
    }

    pub fn apply(&self, alg: &MainExampleAlgebra, a: &Poly) -> Poly {
        match self {
            Operator::Zero => Poly::zero(a.field()),
            Operator::Identity => a.clone(),
            Operator::Augmentation => Poly::one(a.field()).scale(&a.constant_term()),
            Operator::LeftMul(x) => alg.mul(x, a),
            Operator::C(l) => c_operator(*l, a),
            Operator::Compose(f, g) => f.apply(alg, &g.apply(alg, a)),
            Operator::Sum(fs) => {
                let mut acc = Poly::zero(a.field());
                for f in fs {
                    acc.add_assign(&f.apply(alg, a));
                }
                acc
            }
            Operator::Scale(c, f) => f.apply(alg, a).scale(c),
        }
    }
}

impl std::ops::Neg for Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        match &self {
            Operator::Zero => Operator::Zero,
            _ => {
                let field = CoefficientField::Rational;
                Operator::Scale(field.from_i64(-1), Box::new(self))
            }
        }
    }
}

/// One verified identity and its outcome on the tested slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Input of the first failing case, if any.
    pub first_failure: Option<String>,
    pub passed: bool,
}

impl IdentityCheck {
    fn from_cases(name: impl Into<String>, results: Vec<(String, bool)>) -> Self {
        let failures = results.iter().filter(|(_, ok)| !ok).count();
        IdentityCheck {
            name: name.into(),
            cases: results.len(),
            failures,
            first_failure: results.into_iter().find(|(_, ok)| !ok).map(|(w, _)| w),
            passed: failures == 0,
        }
    }
}

/// `w = eps(w) + sum_l l * c_l(w)` on every normal word of length at most
/// `max_length`.
pub fn verify_c0_identity(alg: &MainExampleAlgebra, max_length: usize) -> IdentityCheck {
    let results = alg
        .normal_words(max_length)
        .into_par_iter()
        .map(|w| {
            let a = Poly::word(alg.field(), w.clone());
            let mut rhs = Operator::Augmentation.apply(alg, &a);
            for l in [X1, X2, Y1, Y2] {
                rhs.add_assign(&alg.mul(&Poly::letter(alg.field(), l), &c_operator(l, &a)));
            }
            (alg.alphabet().render(&w), rhs == a)
        })
        .collect();
    IdentityCheck::from_cases("a = eps(a) + x1 c_x1(a) + x2 c_x2(a) + y1 c_y1(a) + y2 c_y2(a)", results)
}

/// An operator identity `c_l o (a *) = rhs`.
#[derive(Clone, Debug)]
pub struct CIdentity {
    pub name: String,
    pub c_letter: Letter,
    pub multiplier: Letter,
    pub rhs: Operator,
}

/// The sixteen identities describing `c_l` after left multiplication by a
/// generator.
pub fn c_identities(alg: &MainExampleAlgebra) -> Vec<CIdentity> {
    use Operator::*;
    let f = alg.field();
    let letter = |l| Poly::letter(f, l);
    let names = ["x1", "x2", "y1", "y2"];
    let mut out = Vec::new();
    let mut push = |c: Letter, m: Letter, rhs_name: &str, rhs: Operator| {
        out.push(CIdentity {
            name: format!("c_{} {} = {}", names[c as usize], names[m as usize], rhs_name),
            c_letter: c,
            multiplier: m,
            rhs,
        });
    };
    push(
        X1,
        X1,
        "eps + x1 c_x1 + y1 c_y1",
        Sum(vec![Augmentation, Operator::then_left_mul(letter(X1), C(X1)), Operator::then_left_mul(letter(Y1), C(Y1))]),
    );
    push(X1, X2, "0", Zero);
    push(X2, X1, "0", Zero);
    push(
        X2,
        X2,
        "eps + x2 c_x2 + y2 c_y2",
        Sum(vec![Augmentation, Operator::then_left_mul(letter(X2), C(X2)), Operator::then_left_mul(letter(Y2), C(Y2))]),
    );
    push(
        Y1,
        X1,
        "-(y1 - 1) c_x2 + x1 c_y2",
        Sum(vec![-Operator::then_left_mul(alg.parse("y1 - 1"), C(X2)), Operator::then_left_mul(letter(X1), C(Y2))]),
    );
    push(Y1, X2, "0", Zero);
    push(Y2, X1, "0", Zero);
    push(
        Y2,
        X2,
        "-(y2 - 1) c_x1 + x2 c_y1",
        Sum(vec![-Operator::then_left_mul(alg.parse("y2 - 1"), C(X1)), Operator::then_left_mul(letter(X2), C(Y1))]),
    );
    for y in [Y1, Y2] {
        for c in [X1, X2, Y1, Y2] {
            if c == y {
                push(c, y, "id", Identity);
            } else {
                push(c, y, "0", Zero);
            }
        }
    }
    out
}

/// Every identity of [`c_identities`] on every normal word of length at most
/// `max_length`.
pub fn verify_c_equations(alg: &MainExampleAlgebra, max_length: usize) -> Vec<IdentityCheck> {
    let words = alg.normal_words(max_length);
    c_identities(alg)
        .into_par_iter()
        .map(|id| {
            let results = words
                .iter()
                .map(|w| {
                    let a = Poly::word(alg.field(), w.clone());
                    let lhs = c_operator(id.c_letter, &alg.mul(&Poly::letter(alg.field(), id.multiplier), &a));
                    (alg.alphabet().render(w), lhs == id.rhs.apply(alg, &a))
                })
                .collect();
            IdentityCheck::from_cases(id.name.clone(), results)
        })
        .collect()
}

/// A matrix over the algebra; it acts on column vectors by left
/// multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Poly>,
}

impl AlgebraMatrix {
    pub fn parse(alg: &MainExampleAlgebra, rows: &[&[&str]]) -> Self {
        let cols = rows[0].len();
        let entries = rows.iter().flat_map(|r| r.iter().map(|s| alg.nf(&alg.parse(s)))).collect();
        AlgebraMatrix { rows: rows.len(), cols, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn mul(&self, alg: &MainExampleAlgebra, other: &AlgebraMatrix) -> AlgebraMatrix {
        assert_eq!(self.cols, other.rows);
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(alg.field());
                for k in 0..self.cols {
                    acc.add_assign(&self.get(i, k).mul(other.get(k, j)));
                }
                entries.push(alg.nf(&acc));
            }
        }
        AlgebraMatrix { rows: self.rows, cols: other.cols, entries }
    }

    pub fn transpose(&self) -> AlgebraMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        AlgebraMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn apply(&self, alg: &MainExampleAlgebra, v: &[Poly]) -> Vec<Poly> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(alg.field());
                for (j, x) in v.iter().enumerate() {
                    acc.add_assign(&self.get(i, j).mul(x));
                }
                alg.nf(&acc)
            })
            .collect()
    }

    pub fn render(&self, alg: &MainExampleAlgebra) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| alg.render(self.get(i, j))).collect()).collect()
    }
}

/// The differential `d_i`, `i >= 1`. Stages above 3 repeat with period 2:
/// even stages use the `d_2` pattern, odd stages the `d_3` pattern.
pub fn d_matrix(alg: &MainExampleAlgebra, i: usize) -> AlgebraMatrix {
    match i {
        0 => panic!("differentials start at stage 1"),
        1 => AlgebraMatrix::parse(alg, &[&["x1", "x2", "y1", "y2"]]),
        i if i % 2 == 0 => AlgebraMatrix::parse(
            alg,
            &[
                &["x2", "0", "-y2", "0"],
                &["0", "x1", "0", "-y1"],
                &["y1 - 1", "0", "x1", "0"],
                &["0", "y2 - 1", "0", "x2"],
            ],
        ),
        _ => AlgebraMatrix::parse(
            alg,
            &[
                &["x1", "0", "y1", "0"],
                &["0", "x2", "0", "y2"],
                &["-y2 + 1", "0", "x2", "0"],
                &["0", "-y1 + 1", "0", "x1"],
            ],
        ),
    }
}

/// The transpose of the odd-stage differential as it is usually displayed.
pub fn displayed_odd_transpose(alg: &MainExampleAlgebra) -> AlgebraMatrix {
    AlgebraMatrix::parse(
        alg,
        &[&["x1", "0", "-y2 + 1", "0"], &["0", "x2", "0", "-y1 + 1"], &["y1", "0", "x2", "0"], &["0", "y2", "0", "x1"]],
    )
}

/// A matrix of operators acting on column vectors.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Operator>,
}

impl OperatorMatrix {
    pub fn apply(&self, alg: &MainExampleAlgebra, v: &[Poly]) -> Vec<Poly> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(alg.field());
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc.add_assign(&self.entries[i * self.cols + j].apply(alg, x));
                    }
                }
                acc
            })
            .collect()
    }
}

/// The contracting homotopy `h_i`, `i >= 0`, with the same period-2 pattern
/// as the differentials.
pub fn h_matrix(i: usize) -> OperatorMatrix {
    use Operator::*;
    let diag = |a: Operator, b: Operator, c: Operator, d: Operator| OperatorMatrix {
        rows: 4,
        cols: 4,
        entries: vec![
            a, Zero, Zero, Zero, //
            Zero, b, Zero, Zero, //
            c, Zero, Zero, Zero, //
            Zero, d, Zero, Zero,
        ],
    };
    match i {
        0 => OperatorMatrix { rows: 4, cols: 1, entries: vec![C(X1), C(X2), C(Y1), C(Y2)] },
        i if i % 2 == 1 => diag(C(X2), C(X1), -C(Y2), -C(Y1)),
        _ => diag(C(X1), C(X2), C(Y1), C(Y2)),
    }
}

/// `d_i * d_{i+1} = 0` for `1 <= i < max_stage`, entry by entry.
pub fn verify_complex(alg: &MainExampleAlgebra, max_stage: usize) -> Vec<IdentityCheck> {
    (1..max_stage)
        .map(|i| {
            let prod = d_matrix(alg, i).mul(alg, &d_matrix(alg, i + 1));
            let results = prod
                .entries
                .iter()
                .enumerate()
                .map(|(k, e)| (format!("entry ({}, {})", k / prod.cols + 1, k % prod.cols + 1), e.is_zero()))
                .collect();
            IdentityCheck::from_cases(format!("d_{} d_{} = 0", i, i + 1), results)
        })
        .collect()
}

/// `h_{-1} eps + d_1 h_0 = id` and `h_{i-1} d_i + d_{i+1} h_i = id` for
/// `1 <= i <= max_stage`, on every unit vector times a normal word of length
/// at most `max_length`.
pub fn verify_homotopy(alg: &MainExampleAlgebra, max_stage: usize, max_length: usize) -> Vec<IdentityCheck> {
    let words = alg.normal_words(max_length);
    let f = alg.field();
    (0..=max_stage)
        .into_par_iter()
        .map(|i| {
            let d_next = d_matrix(alg, i + 1);
            let h = h_matrix(i);
            let width = if i == 0 { 1 } else { 4 };
            let mut cases = Vec::new();
            for slot in 0..width {
                for w in &words {
                    let mut v = vec![Poly::zero(f); width];
                    v[slot] = Poly::word(f, w.clone());
                    let mut lhs = d_next.apply(alg, &h.apply(alg, &v));
                    if i == 0 {
                        lhs[0].add_assign(&Operator::Augmentation.apply(alg, &v[0]));
                    } else {
                        let back = h_matrix(i - 1).apply(alg, &d_matrix(alg, i).apply(alg, &v));
                        for (x, y) in lhs.iter_mut().zip(&back) {
                            x.add_assign(y);
                        }
                    }
                    cases.push((format!("e{} {}", slot + 1, alg.alphabet().render(w)), lhs == v));
                }
            }
            let name = if i == 0 {
                "h_-1 eps + d_1 h_0 = id".to_string()
            } else {
                format!("h_{} d_{} + d_{} h_{} = id", i - 1, i, i + 1, i)
            };
            IdentityCheck::from_cases(name, cases)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtSteps {
    pub transpose_matches: IdentityCheck,
    pub c_y2_after_x1_vanishes: IdentityCheck,
    pub c_y2_after_y2_is_identity: IdentityCheck,
    /// Dimension of the kernel of `id - c_y2` on the span of normal words of
    /// length `1..=max_length`.
    pub kernel_dim: usize,
    pub slice_dim: usize,
}

impl ExtSteps {
    pub fn passed(&self) -> bool {
        self.transpose_matches.passed
            && self.c_y2_after_x1_vanishes.passed
            && self.c_y2_after_y2_is_identity.passed
            && self.kernel_dim == 0
    }
}

/// The finite ingredients of the nonvanishing argument for the odd
/// cohomology class: the transpose of the odd differential, two operator
/// identities for `c_y2` on words of length at most `identity_length`, and
/// injectivity of `id - c_y2` on normal words of length `1..=kernel_length`.
pub fn verify_ext_steps(alg: &MainExampleAlgebra, identity_length: usize, kernel_length: usize) -> ExtSteps {
    let f = alg.field();
    let computed = d_matrix(alg, 3).transpose();
    let displayed = displayed_odd_transpose(alg);
    let transpose_cases = (0..16)
        .map(|k| (format!("entry ({}, {})", k / 4 + 1, k % 4 + 1), computed.entries[k] == displayed.entries[k]))
        .collect();

    let words = alg.normal_words(identity_length);
    let x1_cases = words
        .iter()
        .map(|w| {
            let a = Poly::word(f, w.clone());
            let image = c_operator(Y2, &alg.mul(&Poly::letter(f, X1), &a));
            (alg.alphabet().render(w), image.is_zero())
        })
        .collect();
    let y2_cases = words
        .iter()
        .map(|w| {
            let a = Poly::word(f, w.clone());
            let image = c_operator(Y2, &alg.mul(&Poly::letter(f, Y2), &a));
            (alg.alphabet().render(w), image == a)
        })
        .collect();

    let slice: Vec<Word> = alg.normal_words(kernel_length).into_iter().filter(|w| !w.is_one()).collect();
    let vectors = slice.iter().map(|w| {
        let a = Poly::word(f, w.clone());
        a.sub(&c_operator(Y2, &a)).into_terms().collect::<SparseVec<Word>>()
    });
    let r = rank(f, vectors);
    ExtSteps {
        transpose_matches: IdentityCheck::from_cases("d_3 transposed matches the displayed matrix", transpose_cases),
        c_y2_after_x1_vanishes: IdentityCheck::from_cases("c_y2 x1 = 0", x1_cases),
        c_y2_after_y2_is_identity: IdentityCheck::from_cases("c_y2 y2 = id", y2_cases),
        kernel_dim: slice.len() - r,
        slice_dim: slice.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialIdentity {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCheck {
    pub relation: String,
    pub n: usize,
    /// `r - E` equals the explicit combination of `r1`, `r2`.
    pub combination_holds: bool,
    /// Every term of `E` has length at least `n`.
    pub remainder_in_power: bool,
    /// Independent check: the relation vanishes in `k<X>/((r1, r2) + I^n)`.
    /// Only computed for small `n`.
    pub quotient_cross_check: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IomegaReport {
    pub corrected: Vec<PolynomialIdentity>,
    /// The sign variant `x1 r2 - r1 x1 = r3 y2 - y1 r3 - r3`, reported
    /// because it is the form commonly written down; it does not hold.
    pub displayed_variant: PolynomialIdentity,
    pub membership: Vec<MembershipCheck>,
    pub passed: bool,
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `T^k(f) = sum_a C(k, a) left^a f right^(k - a)`.
fn two_sided_power(f: &Poly, left: &Poly, right: &Poly, k: u64) -> Poly {
    let field = f.field();
    let mut acc = Poly::zero(field);
    for a in 0..=k {
        let term = left.pow(a as u32).mul(f).mul(&right.pow((k - a) as u32));
        acc.add_assign(&term.scale(&field.from_i64(binomial(k, a))));
    }
    acc
}

/// Checks the two identities expressing `r3`, `r4` through `r1`, `r2`, and
/// certifies `r3, r4 in (r1, r2) + I^n` for `2 <= n <= max_n` by an explicit
/// combination. Quotient cross-checks run for `n <= cross_check_n`.
pub fn verify_iomega_identities(alg: &MainExampleAlgebra, max_n: usize, cross_check_n: usize) -> IomegaReport {
    let (r1, r2, r3, r4) = (alg.relation(0), alg.relation(1), alg.relation(2), alg.relation(3));
    let f = alg.field();
    let letter = |l| Poly::letter(f, l);
    let (x1, x2, y1, y2) = (letter(X1), letter(X2), letter(Y1), letter(Y2));
    let d3 = x1.mul(r2).sub(&r1.mul(&x1));
    let d4 = x2.mul(r1).sub(&r2.mul(&x2));
    let rhs3 = r3.mul(&y2).add(&y1.mul(r3)).sub(r3);
    let rhs4 = r4.mul(&y1).add(&y2.mul(r4)).sub(r4);
    let variant = r3.mul(&y2).sub(&y1.mul(r3)).sub(r3);
    let render = |p: &Poly| alg.render(p);
    let corrected = vec![
        PolynomialIdentity {
            name: "x1 r2 - r1 x1 = r3 y2 + y1 r3 - r3".into(),
            lhs: render(&d3),
            rhs: render(&rhs3),
            holds: d3 == rhs3,
        },
        PolynomialIdentity {
            name: "x2 r1 - r2 x2 = r4 y1 + y2 r4 - r4".into(),
            lhs: render(&d4),
            rhs: render(&rhs4),
            holds: d4 == rhs4,
        },
    ];
    let displayed_variant = PolynomialIdentity {
        name: "x1 r2 - r1 x1 = r3 y2 - y1 r3 - r3".into(),
        lhs: render(&d3),
        rhs: render(&variant),
        holds: d3 == variant,
    };

    let sub = Presentation::new(
        alg.alphabet().clone(),
        f,
        vec![r1.clone(), r2.clone()],
        alg.presentation().order_max().clone(),
        alg.presentation().order_min().clone(),
    )
    .expect("valid presentation");
    let mut membership = Vec::new();
    for n in 2..=max_n {
        let k = (n - 2) as u64;
        let quotient = (n <= cross_check_n).then(|| build_truncated_quotient(&sub, n).expect("small quotient"));
        for (name, r, d, left, right) in [("r3", r3, &d3, &y1, &y2), ("r4", r4, &d4, &y2, &y1)] {
            let e = two_sided_power(r, left, right, k);
            let mut combo = Poly::zero(f);
            for j in 0..k {
                combo = combo.sub(&two_sided_power(d, left, right, j));
            }
            membership.push(MembershipCheck {
                relation: name.into(),
                n,
                combination_holds: r.sub(&e) == combo,
                remainder_in_power: e.min_length() >= n,
                quotient_cross_check: quotient.as_ref().map(|q| q.normal_form(r).is_zero()),
            });
        }
    }
    let passed = corrected.iter().all(|c| c.holds)
        && membership
            .iter()
            .all(|m| m.combination_holds && m.remainder_in_power && m.quotient_cross_check != Some(false));
    IomegaReport { corrected, displayed_variant, membership, passed }
}
