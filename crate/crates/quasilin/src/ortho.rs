//! Orthogonality of quasigroup pairs: the definitional brute-force check and
//! the catalog of morphism-expression criteria, each an if-and-only-if test
//! on the component maps of the forms involved.
//!
//! Pair criteria take two forms whose classes and orientations match the
//! criterion signature; one-sided forms carrying a constant are normalized
//! by absorbing it into their unconstrained permutation first. Quantified
//! criteria ("for any t") are decided by exhaustive iteration over the
//! carrier, short-circuiting on the first failing element, which is then
//! reported in the witness.
//!
//! Parastrophe criteria (`PAR_*`) take a single two-sided form and decide
//! orthogonality against one of its own parastrophes.

use thiserror::Error;

use crate::expr::{first_image_collision, EvalError, EvalScratch, MapExpr};
use crate::form::{
    parastrophe_table, ConstantPlacement, FormClass, ParastropheLabel, Quasigroup, QuasigroupForm,
    Side, TagRequirement,
};
use crate::group::FiniteGroup;
use crate::morphism::Morphism;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrthoError {
    #[error("order mismatch: {a} vs {b}")]
    OrderMismatch { a: usize, b: usize },
    #[error("forms are defined over different carrier groups")]
    CarrierMismatch,
    #[error("criterion {criterion} expects {expected} on the {side} form")]
    SignatureMismatch {
        criterion: CriterionId,
        side: &'static str,
        expected: &'static str,
    },
    #[error("criterion {0} is quantified; an element is required")]
    MissingQuantifier(CriterionId),
    #[error("criterion {0} is not quantified; no element expected")]
    UnexpectedQuantifier(CriterionId),
    #[error("criterion {criterion} takes {expected} forms")]
    ArityMismatch {
        criterion: CriterionId,
        expected: &'static str,
    },
    #[error("class {0} has no parastrophe-orthogonality criterion")]
    UnsupportedClass(FormClass),
    #[error("the identity parastrophe of a quasigroup is never orthogonal to it; pick a non-identity label")]
    IdentityParastrophe,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// How a criterion verdict was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictMethod {
    BruteForce,
    TheoremCriterion,
}

/// Evidence for a negative verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// Two distinct cells carrying the same value pair.
    Cells {
        first: (usize, usize),
        second: (usize, usize),
    },
    /// Two elements with the same image under the criterion map, together
    /// with the quantifier element that produced the map (if quantified).
    Collision {
        t: Option<usize>,
        a: usize,
        b: usize,
    },
    /// The criterion map is bijective but fails the homomorphism property
    /// at `(x, y)` (only the T-quasigroup criterion can report this).
    NotEndomorphism { x: usize, y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityVerdict {
    pub orthogonal: bool,
    pub method: VerdictMethod,
    pub criterion: Option<CriterionId>,
    pub witness: Option<Witness>,
}

impl OrthogonalityVerdict {
    fn orthogonal_by(criterion: Option<CriterionId>, method: VerdictMethod) -> Self {
        OrthogonalityVerdict {
            orthogonal: true,
            method,
            criterion,
            witness: None,
        }
    }
}

macro_rules! criterion_ids {
    ($(($variant:ident, $name:literal, $quantified:expr, $sigma:expr)),+ $(,)?) => {
        /// Identifier of one theorem in the orthogonality catalog.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum CriterionId {
            $($variant),+
        }

        impl CriterionId {
            pub const ALL: &'static [CriterionId] = &[$(CriterionId::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $(CriterionId::$variant => $name),+
                }
            }

            pub fn parse(s: &str) -> Option<CriterionId> {
                match s {
                    $($name => Some(CriterionId::$variant),)+
                    _ => None,
                }
            }

            /// Whether the criterion map is quantified over the carrier.
            pub fn quantified(self) -> bool {
                match self {
                    $(CriterionId::$variant => $quantified),+
                }
            }

            /// The parastrophe a `PAR_*` criterion tests against; `None`
            /// for pair criteria.
            pub fn sigma(self) -> Option<ParastropheLabel> {
                match self {
                    $(CriterionId::$variant => $sigma),+
                }
            }
        }
    };
}

use ParastropheLabel as P;

criterion_ids![
    (LlLl, "LL_LL", false, None),
    (RlRl, "RL_RL", false, None),
    (RaRa, "RA_RA", false, None),
    (LaLa, "LA_LA", false, None),
    (LlRa, "LL_RA", false, None),
    (LlRaAlt, "LL_RA_alt", false, None),
    (LlLa, "LL_LA", true, None),
    (LaRl, "LA_RL", false, None),
    (LinLin, "LIN_LIN", false, None),
    (LinLin12, "LIN_LIN12", true, None),
    (LinLl12, "LIN_LL12", true, None),
    (TT, "T_T", false, None),
    (AlinAlin12, "ALIN_ALIN12", true, None),
    (LlRl12, "LL_RL12", true, None),
    (LlRl12Alt, "LL_RL12_alt", true, None),
    (ParLin12, "PAR_LIN12", true, Some(P::S12)),
    (ParLin13, "PAR_LIN13", false, Some(P::S13)),
    (ParLin23, "PAR_LIN23", false, Some(P::S23)),
    (ParLin123, "PAR_LIN123", false, Some(P::S123)),
    (ParLin132, "PAR_LIN132", false, Some(P::S132)),
    (ParAlin12, "PAR_ALIN12", true, Some(P::S12)),
    (ParAlin13, "PAR_ALIN13", true, Some(P::S13)),
    (ParAlin23, "PAR_ALIN23", true, Some(P::S23)),
    (ParAlin123, "PAR_ALIN123", false, Some(P::S123)),
    (ParAlin132, "PAR_ALIN132", false, Some(P::S132)),
    (ParLinAlin12, "PAR_LINALIN12", false, Some(P::S12)),
    (ParLinAlin13, "PAR_LINALIN13", false, Some(P::S13)),
    (ParLinAlin23, "PAR_LINALIN23", true, Some(P::S23)),
    (ParLinAlin123, "PAR_LINALIN123", false, Some(P::S123)),
    (ParLinAlin132, "PAR_LINALIN132", true, Some(P::S132)),
    (ParAlinLin12, "PAR_ALINLIN12", false, Some(P::S12)),
    (ParAlinLin13, "PAR_ALINLIN13", true, Some(P::S13)),
    (ParAlinLin23, "PAR_ALINLIN23", false, Some(P::S23)),
    (ParAlinLin123, "PAR_ALINLIN123", true, Some(P::S123)),
    (ParAlinLin132, "PAR_ALINLIN132", false, Some(P::S132)),
    (ParT12, "PAR_T12", false, Some(P::S12)),
    (ParT13, "PAR_T13", false, Some(P::S13)),
    (ParT23, "PAR_T23", false, Some(P::S23)),
    (ParT123, "PAR_T123", false, Some(P::S123)),
    (ParT132, "PAR_T132", false, Some(P::S132)),
];

impl std::fmt::Display for CriterionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Expected shape of one side of a pair criterion.
#[derive(Debug, Clone, Copy)]
struct SideSpec {
    first: TagRequirement,
    second: TagRequirement,
    transposed: bool,
    /// Which summand absorbs a constant before the criterion applies;
    /// `None` means the criterion tolerates constants as given.
    absorb: Option<Side>,
    abelian: bool,
}

impl SideSpec {
    /// The form class whose sweep exactly matches this side's requirements.
    fn enumeration_class(self) -> FormClass {
        use TagRequirement::{AntiAutomorphism as Anti, Automorphism as Auto, Permutation as Perm};
        match (self.first, self.second) {
            (Auto, Perm) => FormClass::LeftLinear,
            (Perm, Auto) => FormClass::RightLinear,
            (Anti, Perm) => FormClass::LeftAlinear,
            (Perm, Anti) => FormClass::RightAlinear,
            (Auto, Auto) if self.abelian => FormClass::TQuasigroup,
            (Auto, Auto) => FormClass::Linear,
            (Anti, Anti) => FormClass::Alinear,
            (Perm, Perm) | (Auto, Anti) | (Anti, Auto) => {
                unreachable!("no criterion in the catalog uses this shape")
            }
        }
    }
}

const fn side(first: TagRequirement, second: TagRequirement, transposed: bool) -> SideSpec {
    let absorb = match (first, second) {
        (TagRequirement::Permutation, _) => Some(Side::First),
        (_, TagRequirement::Permutation) => Some(Side::Second),
        _ => None,
    };
    SideSpec {
        first,
        second,
        transposed,
        absorb,
        abelian: false,
    }
}

impl CriterionId {
    /// Side specs of a pair criterion; `None` for the `PAR_*` family.
    fn pair_signature(self) -> Option<(SideSpec, SideSpec)> {
        use TagRequirement::{AntiAutomorphism as Anti, Automorphism as Auto, Permutation as Perm};
        let spec = match self {
            CriterionId::LlLl => (side(Auto, Perm, false), side(Auto, Perm, false)),
            CriterionId::RlRl => (side(Perm, Auto, false), side(Perm, Auto, false)),
            CriterionId::RaRa => (side(Perm, Anti, false), side(Perm, Anti, false)),
            CriterionId::LaLa => (side(Anti, Perm, false), side(Anti, Perm, false)),
            CriterionId::LlRa => (side(Auto, Perm, false), side(Perm, Anti, true)),
            CriterionId::LlRaAlt => (side(Auto, Perm, true), side(Perm, Anti, false)),
            CriterionId::LlLa => (side(Auto, Perm, false), side(Anti, Perm, false)),
            CriterionId::LaRl => (side(Anti, Perm, false), side(Perm, Auto, true)),
            CriterionId::LinLin => (side(Auto, Auto, false), side(Auto, Auto, false)),
            CriterionId::LinLin12 => (side(Auto, Auto, false), side(Auto, Auto, true)),
            CriterionId::LinLl12 => (side(Auto, Auto, false), side(Auto, Perm, true)),
            CriterionId::TT => {
                let mut a = side(Auto, Auto, false);
                a.abelian = true;
                (a, a)
            }
            CriterionId::AlinAlin12 => (side(Anti, Anti, false), side(Anti, Anti, true)),
            CriterionId::LlRl12 => (side(Auto, Perm, false), side(Perm, Auto, true)),
            CriterionId::LlRl12Alt => (side(Auto, Perm, true), side(Perm, Auto, false)),
            _ => return None,
        };
        Some(spec)
    }

    /// The class a `PAR_*` criterion applies to.
    fn parastrophe_class(self) -> Option<FormClass> {
        use CriterionId::*;
        match self {
            ParLin12 | ParLin13 | ParLin23 | ParLin123 | ParLin132 => Some(FormClass::Linear),
            ParAlin12 | ParAlin13 | ParAlin23 | ParAlin123 | ParAlin132 => Some(FormClass::Alinear),
            ParLinAlin12 | ParLinAlin13 | ParLinAlin23 | ParLinAlin123 | ParLinAlin132 => {
                Some(FormClass::LeftLinearRightAlinear)
            }
            ParAlinLin12 | ParAlinLin13 | ParAlinLin23 | ParAlinLin123 | ParAlinLin132 => {
                Some(FormClass::LeftAlinearRightLinear)
            }
            ParT12 | ParT13 | ParT23 | ParT123 | ParT132 => Some(FormClass::TQuasigroup),
            _ => None,
        }
    }

    pub fn is_pair_criterion(self) -> bool {
        self.pair_signature().is_some()
    }

    /// The `(class, transposed)` pair of sweeps that feeds a pair criterion
    /// during cross-validation.
    pub fn sweep_shape(self) -> Option<((FormClass, bool), (FormClass, bool))> {
        let (a, b) = self.pair_signature()?;
        Some((
            (a.enumeration_class(), a.transposed),
            (b.enumeration_class(), b.transposed),
        ))
    }

    /// The single-form sweep class of a `PAR_*` criterion.
    pub fn parastrophe_sweep_class(self) -> Option<FormClass> {
        self.parastrophe_class()
    }

    /// The `PAR_*` criterion for a form class and parastrophe.
    pub fn for_parastrophe(class: FormClass, sigma: ParastropheLabel) -> Option<CriterionId> {
        CriterionId::ALL
            .iter()
            .copied()
            .find(|id| id.parastrophe_class() == Some(class) && id.sigma() == Some(sigma))
    }
}

fn atom(m: &Morphism) -> MapExpr {
    MapExpr::atom(m.clone())
}

/// Peels an anti-automorphism `I . phi` down to its automorphism core `phi`.
fn core(m: &Morphism) -> MapExpr {
    MapExpr::compose(MapExpr::Inversion, atom(m))
}

fn inv(e: MapExpr) -> MapExpr {
    MapExpr::inverse(e)
}

fn neg(e: MapExpr) -> MapExpr {
    MapExpr::negate(e)
}

fn chain(parts: Vec<MapExpr>) -> MapExpr {
    MapExpr::compose_all(parts)
}

fn sum2(a: MapExpr, b: MapExpr) -> MapExpr {
    MapExpr::sum(vec![a, b])
}

/// Applies the inverse of a (bijective) component map to one element.
fn apply_inv(m: &Morphism, x: usize) -> usize {
    m.map().iter().position(|&v| v == x).expect("component maps are bijective")
}

/// Instantiates the criterion's morphism-expression template(s).
///
/// Forms are read positionally as already normalized for the criterion
/// (constants absorbed where the signature demands; two-sided constants in
/// `Right` placement); [`orthogonal_by_criterion`] and
/// [`parastrophe_orthogonality`] do that normalization. `t` supplies the
/// quantifier element for quantified criteria and must be absent otherwise.
///
/// Every criterion is a single expression except `PAR_T12`, whose verdict
/// needs two maps to be permutations simultaneously; the returned vector is
/// the conjunction.
pub fn criterion_exprs(
    id: CriterionId,
    a: &QuasigroupForm,
    b: Option<&QuasigroupForm>,
    t: Option<usize>,
) -> Result<Vec<MapExpr>, OrthoError> {
    if id.quantified() && t.is_none() {
        return Err(OrthoError::MissingQuantifier(id));
    }
    if !id.quantified() && t.is_some() {
        return Err(OrthoError::UnexpectedQuantifier(id));
    }
    if id.is_pair_criterion() && b.is_none() {
        return Err(OrthoError::ArityMismatch {
            criterion: id,
            expected: "two",
        });
    }
    if !id.is_pair_criterion() && b.is_some() {
        return Err(OrthoError::ArityMismatch {
            criterion: id,
            expected: "one (the parastrophe is derived)",
        });
    }
    let g = &**a.group();
    let jt = || MapExpr::Conjugation(t.unwrap());
    let id_map = || MapExpr::identity(g);
    let i = || MapExpr::Inversion;

    let exprs = match id {
        // ---- pair criteria ----------------------------------------------
        CriterionId::LlLl => {
            let b = b.unwrap();
            // (-phi^-1 beta + psi^-1 delta)
            vec![sum2(
                neg(chain(vec![inv(atom(a.left())), atom(a.right())])),
                chain(vec![inv(atom(b.left())), atom(b.right())]),
            )]
        }
        CriterionId::RlRl => {
            let b = b.unwrap();
            // (phi^-1 alpha - psi^-1 gamma)
            vec![sum2(
                chain(vec![inv(atom(a.right())), atom(a.left())]),
                neg(chain(vec![inv(atom(b.right())), atom(b.left())])),
            )]
        }
        CriterionId::RaRa => {
            let b = b.unwrap();
            // (-(phi~)^-1 alpha + (psi~)^-1 gamma), inverses of the anti maps
            vec![sum2(
                neg(chain(vec![inv(atom(a.right())), atom(a.left())])),
                chain(vec![inv(atom(b.right())), atom(b.left())]),
            )]
        }
        CriterionId::LaLa => {
            let b = b.unwrap();
            // ((phi~)^-1 beta - (psi~)^-1 delta)
            vec![sum2(
                chain(vec![inv(atom(a.left())), atom(a.right())]),
                neg(chain(vec![inv(atom(b.left())), atom(b.right())])),
            )]
        }
        CriterionId::LlRa | CriterionId::LlRaAlt => {
            let b = b.unwrap();
            // (psi^-1 gamma + phi^-1 beta), psi the core of the anti map
            vec![sum2(
                chain(vec![inv(core(b.right())), atom(b.left())]),
                chain(vec![inv(atom(a.left())), atom(a.right())]),
            )]
        }
        CriterionId::LlLa => {
            let b = b.unwrap();
            // (psi^-1 delta + J_t phi^-1 beta), t ranging over the carrier
            vec![sum2(
                chain(vec![inv(core(b.left())), atom(b.right())]),
                chain(vec![jt(), inv(atom(a.left())), atom(a.right())]),
            )]
        }
        CriterionId::LaRl => {
            let b = b.unwrap();
            // (psi^-1 gamma + phi^-1 beta), phi the core of the left anti map
            vec![sum2(
                chain(vec![inv(atom(b.right())), atom(b.left())]),
                chain(vec![inv(core(a.left())), atom(a.right())]),
            )]
        }
        CriterionId::LinLin => {
            let b = b.unwrap();
            // (-gamma^-1 delta + alpha^-1 beta)
            vec![sum2(
                neg(chain(vec![inv(atom(b.left())), atom(b.right())])),
                chain(vec![inv(atom(a.left())), atom(a.right())]),
            )]
        }
        CriterionId::LinLin12 => {
            let b = b.unwrap();
            // (-J_t gamma^-1 delta + beta^-1 alpha)
            vec![sum2(
                neg(chain(vec![jt(), inv(atom(b.left())), atom(b.right())])),
                chain(vec![inv(atom(a.right())), atom(a.left())]),
            )]
        }
        CriterionId::LinLl12 => {
            let b = b.unwrap();
            // (J_t psi^-1 delta - beta^-1 phi): psi and delta from the
            // transposed left-linear factor, phi and beta from the linear one
            vec![sum2(
                chain(vec![jt(), inv(atom(b.left())), atom(b.right())]),
                neg(chain(vec![inv(atom(a.right())), atom(a.left())])),
            )]
        }
        CriterionId::TT => {
            let b = b.unwrap();
            // (alpha^-1 beta - gamma^-1 delta), additionally required to be
            // an automorphism by the verdict
            vec![sum2(
                chain(vec![inv(atom(a.left())), atom(a.right())]),
                neg(chain(vec![inv(atom(b.left())), atom(b.right())])),
            )]
        }
        CriterionId::AlinAlin12 => {
            let b = b.unwrap();
            // (beta^-1 alpha - J_t gamma^-1 delta) on the automorphism cores
            vec![sum2(
                chain(vec![inv(core(a.right())), core(a.left())]),
                neg(chain(vec![jt(), inv(core(b.left())), core(b.right())])),
            )]
        }
        CriterionId::LlRl12 => {
            let b = b.unwrap();
            // (J_t psi^-1 gamma - phi^-1 beta)
            vec![sum2(
                chain(vec![jt(), inv(atom(b.right())), atom(b.left())]),
                neg(chain(vec![inv(atom(a.left())), atom(a.right())])),
            )]
        }
        CriterionId::LlRl12Alt => {
            let b = b.unwrap();
            // (I psi^-1 gamma + J_t phi^-1 beta)
            vec![sum2(
                chain(vec![i(), inv(atom(b.right())), atom(b.left())]),
                chain(vec![jt(), inv(atom(a.left())), atom(a.right())]),
            )]
        }

        // ---- parastrophe criteria, linear form phi x + psi y + c --------
        CriterionId::ParLin12 => {
            vec![sum2(
                neg(chain(vec![jt(), inv(atom(a.left())), atom(a.right())])),
                chain(vec![inv(atom(a.right())), atom(a.left())]),
            )]
        }
        CriterionId::ParLin13 => {
            // (phi J_{-phi^-1 c} + id)
            let u = g.neg(apply_inv(a.left(), a.constant()));
            vec![sum2(
                chain(vec![atom(a.left()), MapExpr::Conjugation(u)]),
                id_map(),
            )]
        }
        CriterionId::ParLin23 => vec![sum2(id_map(), atom(a.right()))],
        CriterionId::ParLin123 => {
            // (phi J^-1_{psi^-1 c} + psi^2)
            let v = apply_inv(a.right(), a.constant());
            vec![sum2(
                chain(vec![atom(a.left()), MapExpr::ConjugationInv(v)]),
                chain(vec![atom(a.right()), atom(a.right())]),
            )]
        }
        CriterionId::ParLin132 => {
            vec![sum2(
                chain(vec![atom(a.left()), atom(a.left())]),
                atom(a.right()),
            )]
        }

        // ---- alinear form I.phi x + I.psi y + c --------------------------
        CriterionId::ParAlin12 => {
            vec![sum2(
                chain(vec![inv(core(a.right())), core(a.left())]),
                neg(chain(vec![jt(), inv(core(a.left())), core(a.right())])),
            )]
        }
        CriterionId::ParAlin13 => {
            // (phi - J_t J_c), the subscript pair ranging over the carrier
            vec![sum2(
                core(a.left()),
                neg(chain(vec![jt(), MapExpr::Conjugation(a.constant())])),
            )]
        }
        CriterionId::ParAlin23 => {
            // (id + I psi J_t)
            vec![sum2(id_map(), chain(vec![i(), core(a.right()), jt()]))]
        }
        CriterionId::ParAlin123 => {
            // (psi^2 - phi J_{psi^-1 c})
            let v = apply_inv_core(g, a.right(), a.constant());
            vec![sum2(
                chain(vec![core(a.right()), core(a.right())]),
                neg(chain(vec![core(a.left()), MapExpr::Conjugation(v)])),
            )]
        }
        CriterionId::ParAlin132 => {
            vec![sum2(
                core(a.right()),
                neg(chain(vec![core(a.left()), core(a.left())])),
            )]
        }

        // ---- left linear right alinear form phi x + I.psi y + c ----------
        CriterionId::ParLinAlin12 => {
            vec![sum2(
                chain(vec![inv(atom(a.left())), core(a.right())]),
                neg(chain(vec![inv(core(a.right())), atom(a.left())])),
            )]
        }
        CriterionId::ParLinAlin13 => {
            // (id + phi J_{-c})
            let u = g.neg(a.constant());
            vec![sum2(
                id_map(),
                chain(vec![atom(a.left()), MapExpr::Conjugation(u)]),
            )]
        }
        CriterionId::ParLinAlin23 => {
            // (J_t + psi)
            vec![sum2(jt(), core(a.right()))]
        }
        CriterionId::ParLinAlin123 => {
            // (phi + J_{psi(-c)} psi^2)
            let w = apply_core(g, a.right(), g.neg(a.constant()));
            vec![sum2(
                atom(a.left()),
                chain(vec![
                    MapExpr::Conjugation(w),
                    core(a.right()),
                    core(a.right()),
                ]),
            )]
        }
        CriterionId::ParLinAlin132 => {
            // (phi^2 + I J_t psi)
            vec![sum2(
                chain(vec![atom(a.left()), atom(a.left())]),
                chain(vec![i(), jt(), core(a.right())]),
            )]
        }

        // ---- left alinear right linear form I.phi x + psi y + c ----------
        CriterionId::ParAlinLin12 => {
            vec![sum2(
                neg(chain(vec![inv(core(a.left())), atom(a.right())])),
                chain(vec![inv(atom(a.right())), core(a.left())]),
            )]
        }
        CriterionId::ParAlinLin13 => {
            // (phi + I J_t), the subscript -b + c ranging over the carrier
            vec![sum2(core(a.left()), chain(vec![i(), jt()]))]
        }
        CriterionId::ParAlinLin23 => vec![sum2(atom(a.right()), id_map())],
        CriterionId::ParAlinLin123 => {
            // (psi^2 + phi I J_t)
            vec![sum2(
                chain(vec![atom(a.right()), atom(a.right())]),
                chain(vec![core(a.left()), i(), jt()]),
            )]
        }
        CriterionId::ParAlinLin132 => {
            vec![sum2(
                chain(vec![core(a.left()), core(a.left())]),
                atom(a.right()),
            )]
        }

        // ---- T-quasigroup (linear over abelian carrier) ------------------
        CriterionId::ParT12 => {
            // both (phi - psi) and (phi + psi) must be permutations
            vec![
                sum2(atom(a.left()), neg(atom(a.right()))),
                sum2(atom(a.left()), atom(a.right())),
            ]
        }
        CriterionId::ParT13 => vec![sum2(id_map(), atom(a.left()))],
        CriterionId::ParT23 => vec![sum2(id_map(), atom(a.right()))],
        CriterionId::ParT123 => {
            vec![sum2(
                atom(a.left()),
                chain(vec![atom(a.right()), atom(a.right())]),
            )]
        }
        CriterionId::ParT132 => {
            vec![sum2(
                chain(vec![atom(a.left()), atom(a.left())]),
                atom(a.right()),
            )]
        }
    };
    Ok(exprs)
}

/// `(I . m)^-1` applied to one element: the inverse of the automorphism core
/// of an anti map.
fn apply_inv_core(g: &FiniteGroup, m: &Morphism, x: usize) -> usize {
    // core(y) = -m(y), so core(y) = x iff m(y) = -x
    let target = g.neg(x);
    m.map().iter().position(|&v| v == target).expect("component maps are bijective")
}

/// `(I . m)` applied to one element.
fn apply_core(g: &FiniteGroup, m: &Morphism, x: usize) -> usize {
    g.neg(m.apply(x))
}

/// Decides orthogonality of two quasigroups by scanning all value pairs.
///
/// The scan is row-major with a flat bitset over the n^2 pair codes
/// `a(x,y) * n + b(x,y)`; the first repeated code yields a deterministic
/// witness of two cells.
pub fn orthogonal_bruteforce(
    a: &Quasigroup,
    b: &Quasigroup,
) -> Result<OrthogonalityVerdict, OrthoError> {
    let mut scratch = BruteScratch::default();
    orthogonal_bruteforce_with(a, b, &mut scratch)
}

/// Reusable bitset for [`orthogonal_bruteforce_with`].
#[derive(Default)]
pub struct BruteScratch {
    seen: Vec<u64>,
}

/// Scratch-reusing variant of [`orthogonal_bruteforce`].
pub fn orthogonal_bruteforce_with(
    a: &Quasigroup,
    b: &Quasigroup,
    scratch: &mut BruteScratch,
) -> Result<OrthogonalityVerdict, OrthoError> {
    let n = a.order();
    if n != b.order() {
        return Err(OrthoError::OrderMismatch {
            a: n,
            b: b.order(),
        });
    }
    let words = (n * n).div_ceil(64);
    scratch.seen.clear();
    scratch.seen.resize(words, 0);
    let seen = &mut scratch.seen;
    for x in 0..n {
        for y in 0..n {
            let code = a.value(x, y) * n + b.value(x, y);
            let (w, bit) = (code / 64, code % 64);
            if seen[w] & (1 << bit) != 0 {
                // cold path: rescan to locate the first cell with this code
                let first = first_cell_with_code(a, b, code);
                return Ok(OrthogonalityVerdict {
                    orthogonal: false,
                    method: VerdictMethod::BruteForce,
                    criterion: None,
                    witness: Some(Witness::Cells {
                        first,
                        second: (x, y),
                    }),
                });
            }
            seen[w] |= 1 << bit;
        }
    }
    Ok(OrthogonalityVerdict::orthogonal_by(None, VerdictMethod::BruteForce))
}

fn first_cell_with_code(a: &Quasigroup, b: &Quasigroup, code: usize) -> (usize, usize) {
    let n = a.order();
    for x in 0..n {
        for y in 0..n {
            if a.value(x, y) * n + b.value(x, y) == code {
                return (x, y);
            }
        }
    }
    unreachable!("code was observed during the scan")
}

/// Checks one form against a side spec and returns it normalized for the
/// criterion: constant absorbed into the designated permutation (one-sided
/// signatures) or moved to `Right` placement (two-sided signatures).
fn conform(
    id: CriterionId,
    form: &QuasigroupForm,
    spec: SideSpec,
    side_name: &'static str,
) -> Result<QuasigroupForm, OrthoError> {
    let g = form.group();
    let mismatch = |expected: &'static str| OrthoError::SignatureMismatch {
        criterion: id,
        side: side_name,
        expected,
    };
    if form.is_transposed() != spec.transposed {
        return Err(mismatch(if spec.transposed {
            "a transposed form"
        } else {
            "a straight form"
        }));
    }
    if spec.abelian && !g.is_abelian() {
        return Err(mismatch("an abelian carrier"));
    }
    let tag_ok = |m: &Morphism, req: TagRequirement| match req {
        TagRequirement::Permutation => m.tags().permutation,
        TagRequirement::Automorphism => m.tags().automorphism,
        TagRequirement::AntiAutomorphism => m.tags().anti_automorphism,
    };
    if !tag_ok(form.left(), spec.first) {
        return Err(mismatch(match spec.first {
            TagRequirement::Permutation => "a permutation first map",
            TagRequirement::Automorphism => "an automorphism first map",
            TagRequirement::AntiAutomorphism => "an anti-automorphism first map",
        }));
    }
    if !tag_ok(form.right(), spec.second) {
        return Err(mismatch(match spec.second {
            TagRequirement::Permutation => "a permutation second map",
            TagRequirement::Automorphism => "an automorphism second map",
            TagRequirement::AntiAutomorphism => "an anti-automorphism second map",
        }));
    }
    Ok(match spec.absorb {
        Some(side) => form.absorb_into(side),
        None => form.normalize_constant(ConstantPlacement::Right),
    })
}

/// Decides orthogonality of a pair of forms by the named theorem criterion.
///
/// Quantified criteria iterate the quantifier over the whole carrier and
/// short-circuit on the first failure, which lands in the witness. The
/// `T_T` criterion demands an automorphism, not merely a bijection.
pub fn orthogonal_by_criterion(
    id: CriterionId,
    a: &QuasigroupForm,
    b: &QuasigroupForm,
) -> Result<OrthogonalityVerdict, OrthoError> {
    let mut scratch = EvalScratch::new();
    orthogonal_by_criterion_with(id, a, b, &mut scratch)
}

/// Scratch-reusing variant of [`orthogonal_by_criterion`].
pub fn orthogonal_by_criterion_with(
    id: CriterionId,
    a: &QuasigroupForm,
    b: &QuasigroupForm,
    scratch: &mut EvalScratch,
) -> Result<OrthogonalityVerdict, OrthoError> {
    let (spec_a, spec_b) = id.pair_signature().ok_or(OrthoError::ArityMismatch {
        criterion: id,
        expected: "one (the parastrophe is derived)",
    })?;
    if a.group().flat_table() != b.group().flat_table() {
        return Err(OrthoError::CarrierMismatch);
    }
    let na = conform(id, a, spec_a, "first")?;
    let nb = conform(id, b, spec_b, "second")?;
    decide(id, &na, Some(&nb), scratch)
}

/// Shared verdict loop over the (possibly quantified) criterion templates.
fn decide(
    id: CriterionId,
    a: &QuasigroupForm,
    b: Option<&QuasigroupForm>,
    scratch: &mut EvalScratch,
) -> Result<OrthogonalityVerdict, OrthoError> {
    if id.quantified() {
        for t in a.group().elements() {
            if let Some(v) = decide_at(id, a, b, Some(t), scratch)? {
                return Ok(v);
            }
        }
    } else if let Some(v) = decide_at(id, a, b, None, scratch)? {
        return Ok(v);
    }
    Ok(OrthogonalityVerdict::orthogonal_by(
        Some(id),
        VerdictMethod::TheoremCriterion,
    ))
}

fn decide_at(
    id: CriterionId,
    a: &QuasigroupForm,
    b: Option<&QuasigroupForm>,
    t: Option<usize>,
    scratch: &mut EvalScratch,
) -> Result<Option<OrthogonalityVerdict>, OrthoError> {
    let g = &**a.group();
    for expr in criterion_exprs(id, a, b, t)? {
        let values = expr.eval_with(g, scratch)?;
        let verdict = check_map_verdict(id, g, &values, t);
        scratch.release(values);
        if verdict.is_some() {
            return Ok(verdict);
        }
    }
    Ok(None)
}

/// `Some(negative verdict)` if the evaluated criterion map fails its test.
fn check_map_verdict(
    id: CriterionId,
    g: &FiniteGroup,
    values: &[usize],
    t: Option<usize>,
) -> Option<OrthogonalityVerdict> {
    if !crate::expr::distinct_values(values) {
        let (a, b) = first_image_collision(values).expect("collision exists");
        return Some(OrthogonalityVerdict {
            orthogonal: false,
            method: VerdictMethod::TheoremCriterion,
            criterion: Some(id),
            witness: Some(Witness::Collision { t, a, b }),
        });
    }
    if id == CriterionId::TT {
        // bijective, but the theorem asks for an automorphism
        for x in g.elements() {
            for y in g.elements() {
                if values[g.add(x, y)] != g.add(values[x], values[y]) {
                    return Some(OrthogonalityVerdict {
                        orthogonal: false,
                        method: VerdictMethod::TheoremCriterion,
                        criterion: Some(id),
                        witness: Some(Witness::NotEndomorphism { x, y }),
                    });
                }
            }
        }
    }
    None
}

/// Decides orthogonality of a two-sided form against its sigma-parastrophe
/// by the matching theorem criterion.
pub fn parastrophe_orthogonality(
    form: &QuasigroupForm,
    sigma: ParastropheLabel,
) -> Result<OrthogonalityVerdict, OrthoError> {
    let mut scratch = EvalScratch::new();
    parastrophe_orthogonality_with(form, sigma, &mut scratch)
}

/// Scratch-reusing variant of [`parastrophe_orthogonality`].
pub fn parastrophe_orthogonality_with(
    form: &QuasigroupForm,
    sigma: ParastropheLabel,
    scratch: &mut EvalScratch,
) -> Result<OrthogonalityVerdict, OrthoError> {
    if sigma == ParastropheLabel::E {
        return Err(OrthoError::IdentityParastrophe);
    }
    // a transposed form is the (12)-parastrophe of its straight twin, and
    // transposing both members of a pair preserves orthogonality, so the
    // question moves to the straight twin with sigma conjugated by (12)
    if form.is_transposed() {
        let straight = form.clone().swap_arguments();
        let conjugated = ParastropheLabel::S12.then(sigma).then(ParastropheLabel::S12);
        return parastrophe_orthogonality_with(&straight, conjugated, scratch);
    }
    let id = CriterionId::for_parastrophe(form.class(), sigma)
        .ok_or(OrthoError::UnsupportedClass(form.class()))?;
    let normalized = form.normalize_constant(ConstantPlacement::Right);
    decide(id, &normalized, None, scratch)
}

/// As [`parastrophe_orthogonality`], but additionally runs the brute-force
/// oracle on the materialized tables and reports both verdicts.
pub fn parastrophe_orthogonality_checked(
    form: &QuasigroupForm,
    sigma: ParastropheLabel,
) -> Result<(OrthogonalityVerdict, OrthogonalityVerdict), OrthoError> {
    let theorem = parastrophe_orthogonality(form, sigma)?;
    let table = form.materialize();
    let mate = parastrophe_table(&table, sigma);
    let brute = orthogonal_bruteforce(&table, &mate)?;
    Ok((theorem, brute))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::parastrophe_form;
    use crate::morphism::{enumerate_antiautomorphisms, enumerate_automorphisms};
    use crate::sweep::enumerate_forms;
    use std::sync::Arc;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    fn scale(g: &FiniteGroup, k: usize) -> Morphism {
        let map: Vec<usize> = g.elements().map(|x| k * x % g.order()).collect();
        Morphism::classify(g, map).unwrap()
    }

    fn form(
        g: &Arc<FiniteGroup>,
        class: FormClass,
        left: Morphism,
        right: Morphism,
        c: usize,
    ) -> QuasigroupForm {
        QuasigroupForm::new(
            Arc::clone(g),
            class,
            left,
            right,
            c,
            ConstantPlacement::Right,
        )
        .unwrap()
    }

    fn t_form(g: &Arc<FiniteGroup>, a: usize, b: usize, c: usize) -> QuasigroupForm {
        form(g, FormClass::TQuasigroup, scale(g, a), scale(g, b), c)
    }

    #[test]
    fn bruteforce_classic_pair_on_z3() {
        let g = z(3);
        let a = t_form(&g, 1, 1, 0).materialize();
        let b = t_form(&g, 1, 2, 0).materialize();
        let verdict = orthogonal_bruteforce(&a, &b).unwrap();
        assert!(verdict.orthogonal);
        assert_eq!(verdict.method, VerdictMethod::BruteForce);
        assert!(verdict.witness.is_none());
    }

    #[test]
    fn bruteforce_self_pair_has_row_major_witness() {
        let g = z(3);
        let q = t_form(&g, 1, 1, 0).materialize();
        let verdict = orthogonal_bruteforce(&q, &q).unwrap();
        assert!(!verdict.orthogonal);
        // value pairs are (v, v); row-major scan sees (1,1) at cell (0,1)
        // and again at cell (1,0)
        assert_eq!(
            verdict.witness,
            Some(Witness::Cells {
                first: (0, 1),
                second: (1, 0),
            })
        );
    }

    #[test]
    fn bruteforce_parallel_shift_not_orthogonal() {
        let g = z(2);
        let a = t_form(&g, 1, 1, 0).materialize();
        let b = t_form(&g, 1, 1, 1).materialize();
        assert!(!orthogonal_bruteforce(&a, &b).unwrap().orthogonal);
    }

    #[test]
    fn bruteforce_symmetry_and_order_mismatch() {
        let g5 = z(5);
        let g4 = z(4);
        let a = t_form(&g5, 2, 3, 1).materialize();
        let b = t_form(&g5, 1, 2, 0).materialize();
        assert_eq!(
            orthogonal_bruteforce(&a, &b).unwrap().orthogonal,
            orthogonal_bruteforce(&b, &a).unwrap().orthogonal
        );
        let c = t_form(&g4, 1, 1, 0).materialize();
        assert!(matches!(
            orthogonal_bruteforce(&a, &c),
            Err(OrthoError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn criterion_expr_ll_ll_collapses_on_z5() {
        // phi = 2x, beta = id, psi = id, delta = 3x:
        // -phi^-1 beta + psi^-1 delta = -3x + 3x = 0
        let g = z(5);
        let a = form(&g, FormClass::LeftLinear, scale(&g, 2), scale(&g, 1), 0);
        let b = form(&g, FormClass::LeftLinear, scale(&g, 1), scale(&g, 3), 0);
        let exprs = criterion_exprs(CriterionId::LlLl, &a, Some(&b), None).unwrap();
        assert_eq!(exprs.len(), 1);
        assert_eq!(exprs[0].eval(&g).unwrap(), vec![0; 5]);
        let verdict = orthogonal_by_criterion(CriterionId::LlLl, &a, &b).unwrap();
        assert!(!verdict.orthogonal);
        assert!(matches!(verdict.witness, Some(Witness::Collision { t: None, .. })));
    }

    #[test]
    fn criterion_ll_ll_on_z3_and_z4() {
        let g3 = z(3);
        let a = form(&g3, FormClass::LeftLinear, scale(&g3, 1), scale(&g3, 1), 0);
        let b = form(&g3, FormClass::LeftLinear, scale(&g3, 1), scale(&g3, 2), 0);
        assert!(orthogonal_by_criterion(CriterionId::LlLl, &a, &b).unwrap().orthogonal);

        let g4 = z(4);
        let a = form(&g4, FormClass::LeftLinear, scale(&g4, 1), scale(&g4, 1), 0);
        let b = form(&g4, FormClass::LeftLinear, scale(&g4, 1), scale(&g4, 3), 0);
        // -y + 3y = 2y is not a bijection mod 4
        assert!(!orthogonal_by_criterion(CriterionId::LlLl, &a, &b).unwrap().orthogonal);
    }

    #[test]
    fn quantified_expr_collapses_on_abelian_carriers() {
        let g = z(6);
        let a = form(&g, FormClass::Linear, scale(&g, 1), scale(&g, 5), 2);
        let b = form(&g, FormClass::Linear, scale(&g, 5), scale(&g, 1), 3).swap_arguments();
        let reference =
            criterion_exprs(CriterionId::LinLin12, &a, Some(&b), Some(0)).unwrap()[0]
                .eval(&g)
                .unwrap();
        for t in g.elements() {
            let expr = &criterion_exprs(CriterionId::LinLin12, &a, Some(&b), Some(t)).unwrap()[0];
            assert_eq!(expr.eval(&g).unwrap(), reference, "inner maps are trivial");
        }
    }

    #[test]
    fn lin_lin12_never_orthogonal_over_s3() {
        // inner automorphisms cover Aut(S3), so the quantified map always
        // degenerates for some t
        let g = s3();
        let auts = enumerate_automorphisms(&g).unwrap();
        for alpha in auts.iter().take(3) {
            for beta in auts.iter().take(3) {
                let a = form(&g, FormClass::Linear, alpha.clone(), beta.clone(), 1);
                let b = parastrophe_form(&a, ParastropheLabel::S12).unwrap();
                let verdict = orthogonal_by_criterion(CriterionId::LinLin12, &a, &b).unwrap();
                assert!(!verdict.orthogonal);
                assert!(matches!(
                    verdict.witness,
                    Some(Witness::Collision { t: Some(_), .. })
                ));
            }
        }
    }

    #[test]
    fn t_criterion_requires_automorphism() {
        let g = z(3);
        let a = t_form(&g, 1, 1, 0);
        let b = t_form(&g, 1, 2, 0);
        // x - 2x = -x = 2x, an automorphism
        let verdict = orthogonal_by_criterion(CriterionId::TT, &a, &b).unwrap();
        assert!(verdict.orthogonal);
        let exprs = criterion_exprs(CriterionId::TT, &a, Some(&b), None).unwrap();
        let map: Vec<usize> = exprs[0].eval(&g).unwrap();
        assert_eq!(map, vec![0, 2, 1]);
    }

    #[test]
    fn signature_validation_errors() {
        let g = z(5);
        let linear = t_form(&g, 2, 3, 1);
        let ll = form(&g, FormClass::LeftLinear, scale(&g, 2), scale(&g, 1), 0);
        // straight form where a transposed one is expected
        assert!(matches!(
            orthogonal_by_criterion(CriterionId::LinLin12, &linear, &linear),
            Err(OrthoError::SignatureMismatch { .. })
        ));
        // T_T over a valid abelian pair works even when given Linear class
        assert!(orthogonal_by_criterion(CriterionId::TT, &linear, &linear).is_ok());
        // quantifier arity is enforced
        assert!(matches!(
            criterion_exprs(CriterionId::LinLin12, &linear, Some(&linear), None),
            Err(OrthoError::MissingQuantifier(_))
        ));
        assert!(matches!(
            criterion_exprs(CriterionId::LlLl, &ll, Some(&ll), Some(0)),
            Err(OrthoError::UnexpectedQuantifier(_))
        ));
        assert!(matches!(
            criterion_exprs(CriterionId::LlLl, &ll, None, None),
            Err(OrthoError::ArityMismatch { .. })
        ));
        // anti-automorphism expected on an alinear signature
        assert!(matches!(
            orthogonal_by_criterion(CriterionId::AlinAlin12, &linear, &linear),
            Err(OrthoError::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn parastrophe_orthogonality_linear_examples() {
        // identity maps over Z5: (phi + id) = 2x is bijective
        let g = z(5);
        let a = form(&g, FormClass::Linear, scale(&g, 1), scale(&g, 1), 0);
        let (theorem, brute) =
            parastrophe_orthogonality_checked(&a, ParastropheLabel::S13).unwrap();
        assert!(theorem.orthogonal);
        assert_eq!(theorem.orthogonal, brute.orthogonal);

        // doubling kills Z2: (id + psi) = 2x = 0
        let g2 = z(2);
        let a2 = form(&g2, FormClass::Linear, scale(&g2, 1), scale(&g2, 1), 0);
        let (theorem, brute) =
            parastrophe_orthogonality_checked(&a2, ParastropheLabel::S23).unwrap();
        assert!(!theorem.orthogonal);
        assert_eq!(theorem.orthogonal, brute.orthogonal);
    }

    #[test]
    fn parastrophe_orthogonality_t_quasigroup_s12() {
        // phi = 2x, psi = 3x over Z5: phi - psi = -x is a permutation but
        // phi + psi = 5x = 0 is not, so the pair fails
        let g = z(5);
        let a = t_form(&g, 2, 3, 0);
        let (theorem, brute) =
            parastrophe_orthogonality_checked(&a, ParastropheLabel::S12).unwrap();
        assert!(!theorem.orthogonal);
        assert_eq!(theorem.orthogonal, brute.orthogonal);
    }

    #[test]
    fn parastrophe_orthogonality_rejects_identity_and_one_sided() {
        let g = z(5);
        let a = t_form(&g, 2, 3, 0);
        assert!(matches!(
            parastrophe_orthogonality(&a, ParastropheLabel::E),
            Err(OrthoError::IdentityParastrophe)
        ));
        let ll = form(&g, FormClass::LeftLinear, scale(&g, 2), scale(&g, 1), 0);
        assert!(matches!(
            parastrophe_orthogonality(&ll, ParastropheLabel::S13),
            Err(OrthoError::UnsupportedClass(FormClass::LeftLinear))
        ));
    }

    #[test]
    fn parastrophe_orthogonality_transposed_form_agrees_with_bruteforce() {
        let d4 = Arc::new(FiniteGroup::dihedral(4).unwrap());
        let auts = enumerate_automorphisms(&d4).unwrap();
        for phi in auts.iter().step_by(3) {
            for psi in auts.iter().step_by(3) {
                let straight = form(&d4, FormClass::Linear, phi.clone(), psi.clone(), 3);
                let transposed = straight.clone().swap_arguments();
                for sigma in ParastropheLabel::NON_IDENTITY {
                    let (theorem, brute) =
                        parastrophe_orthogonality_checked(&transposed, sigma).unwrap();
                    assert_eq!(theorem.orthogonal, brute.orthogonal, "{sigma}");
                }
            }
        }
    }

    /// The two statements of the left-linear/right-alinear pairing (and of
    /// the quantified left-linear/right-linear one) decide the same
    /// question: transposing both members of a pair preserves orthogonality.
    #[test]
    fn alternate_statements_agree() {
        let g = s3();
        let auts = enumerate_automorphisms(&g).unwrap();
        let antis = enumerate_antiautomorphisms(&g).unwrap();
        for i in [0usize, 2, 4] {
            for j in [1usize, 3, 5] {
                let ll = form(&g, FormClass::LeftLinear, auts[i].clone(), auts[j].clone(), 0);
                let ra = form(&g, FormClass::RightAlinear, auts[j].clone(), antis[i].clone(), 0);
                let v1 = orthogonal_by_criterion(
                    CriterionId::LlRa,
                    &ll,
                    &ra.clone().swap_arguments(),
                )
                .unwrap();
                let v2 = orthogonal_by_criterion(
                    CriterionId::LlRaAlt,
                    &ll.clone().swap_arguments(),
                    &ra,
                )
                .unwrap();
                assert_eq!(v1.orthogonal, v2.orthogonal);

                let rl = form(&g, FormClass::RightLinear, auts[j].clone(), auts[i].clone(), 0);
                let v3 = orthogonal_by_criterion(
                    CriterionId::LlRl12,
                    &ll,
                    &rl.clone().swap_arguments(),
                )
                .unwrap();
                let v4 = orthogonal_by_criterion(
                    CriterionId::LlRl12Alt,
                    &ll.clone().swap_arguments(),
                    &rl,
                )
                .unwrap();
                assert_eq!(v3.orthogonal, v4.orthogonal);
            }
        }
    }

    #[test]
    fn criterion_id_round_trip() {
        for id in CriterionId::ALL {
            assert_eq!(CriterionId::parse(id.name()), Some(*id));
        }
        assert_eq!(CriterionId::parse("LL_LL"), Some(CriterionId::LlLl));
        assert_eq!(CriterionId::parse("nope"), None);
        assert_eq!(
            CriterionId::for_parastrophe(FormClass::Linear, ParastropheLabel::S13),
            Some(CriterionId::ParLin13)
        );
    }

    /// Every criterion template against the brute-force oracle over compact
    /// sweeps; the heavyweight fixture set runs in的 acceptance suite.
    #[test]
    fn criteria_match_bruteforce_on_small_groups() {
        let fixtures = [z(4), z(5), s3()];
        for g in &fixtures {
            for id in CriterionId::ALL {
                if let Some(((ca, ta), (cb, tb))) = id.sweep_shape() {
                    let forms_a = enumerate_forms(g, ca, ta).unwrap();
                    let forms_b = enumerate_forms(g, cb, tb).unwrap();
                    for fa in forms_a.iter().step_by(7) {
                        for fb in forms_b.iter().step_by(5) {
                            let theorem = orthogonal_by_criterion(*id, fa, fb).unwrap();
                            let brute = orthogonal_bruteforce(&fa.materialize(), &fb.materialize())
                                .unwrap();
                            assert_eq!(
                                theorem.orthogonal,
                                brute.orthogonal,
                                "{id} over {} with {} vs {}",
                                g.label(),
                                fa.to_spec(),
                                fb.to_spec()
                            );
                        }
                    }
                } else {
                    let class = id.parastrophe_sweep_class().unwrap();
                    let sigma = id.sigma().unwrap();
                    for fa in enumerate_forms(g, class, false).unwrap().iter().step_by(3) {
                        let (theorem, brute) =
                            parastrophe_orthogonality_checked(fa, sigma).unwrap();
                        assert_eq!(
                            theorem.orthogonal,
                            brute.orthogonal,
                            "{id} over {} with {}",
                            g.label(),
                            fa.to_spec()
                        );
                    }
                }
            }
        }
    }
}
