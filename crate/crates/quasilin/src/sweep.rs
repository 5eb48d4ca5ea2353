//! Exhaustive form enumeration and the standard verification fixtures.
//!
//! Sweeps are bounded the same way everywhere: automorphism and
//! anti-automorphism components are exhaustive, unconstrained permutation
//! components range over the affine maps `x -> phi(x) + c`, and two-sided
//! classes sweep every constant. Enumeration order is deterministic.

use std::sync::Arc;

use crate::form::{ConstantPlacement, FormClass, QuasigroupForm};
use crate::group::FiniteGroup;
use crate::morphism::{
    enumerate_antiautomorphisms, enumerate_automorphisms, Morphism, MorphismError,
};

/// Every form of the class over `group`, in deterministic order.
///
/// Returns an empty sweep for `TQuasigroup` over a non-abelian carrier.
pub fn enumerate_forms(
    group: &Arc<FiniteGroup>,
    class: FormClass,
    transposed: bool,
) -> Result<Vec<QuasigroupForm>, MorphismError> {
    use FormClass::*;
    let g = &**group;
    if class == TQuasigroup && !g.is_abelian() {
        return Ok(Vec::new());
    }
    let auts = enumerate_automorphisms(g)?;
    let antis = || enumerate_antiautomorphisms(g);
    let affines = |auts: &[Morphism]| -> Vec<Morphism> {
        let mut out = Vec::with_capacity(auts.len() * g.order());
        for phi in auts {
            for c in g.elements() {
                out.push(Morphism::affine(g, phi, c));
            }
        }
        out
    };
    let e = g.identity();
    let constants: Vec<usize> = g.elements().collect();

    // (first maps, second maps, constants)
    let (firsts, seconds, cs): (Vec<Morphism>, Vec<Morphism>, Vec<usize>) = match class {
        Linear | TQuasigroup => (auts.clone(), auts.clone(), constants),
        Alinear => (antis()?, antis()?, constants),
        LeftLinearRightAlinear => (auts.clone(), antis()?, constants),
        LeftAlinearRightLinear => (antis()?, auts.clone(), constants),
        LeftLinear => (auts.clone(), affines(&auts), vec![e]),
        RightLinear => (affines(&auts), auts.clone(), vec![e]),
        LeftAlinear => (antis()?, affines(&auts), vec![e]),
        RightAlinear => (affines(&auts), antis()?, vec![e]),
    };

    let mut forms = Vec::with_capacity(firsts.len() * seconds.len() * cs.len());
    for first in &firsts {
        for second in &seconds {
            for &c in &cs {
                forms.push(
                    QuasigroupForm::with_orientation(
                        Arc::clone(group),
                        class,
                        first.clone(),
                        second.clone(),
                        c,
                        ConstantPlacement::Right,
                        transposed,
                    )
                    .expect("enumerated components satisfy the class tags"),
                );
            }
        }
    }
    Ok(forms)
}

/// The quaternion group, supplied as a literal Cayley table.
pub fn quaternion_group() -> Arc<FiniteGroup> {
    let g = FiniteGroup::parse_text(include_str!("../fixtures/q8.tbl"))
        .expect("bundled Q8 table is a valid group")
        .with_label("Q8");
    Arc::new(g)
}

/// The standard verification fixture set: Z2..Z7, Z2xZ2, Z2xZ4, S3, D4, Q8.
pub fn default_fixtures() -> Vec<Arc<FiniteGroup>> {
    let z = |n| FiniteGroup::cyclic(n).unwrap();
    let mut out: Vec<Arc<FiniteGroup>> = (2..=7).map(|n| Arc::new(z(n))).collect();
    out.push(Arc::new(
        FiniteGroup::direct_product(&z(2), &z(2)).unwrap(),
    ));
    out.push(Arc::new(
        FiniteGroup::direct_product(&z(2), &z(4)).unwrap(),
    ));
    out.push(Arc::new(FiniteGroup::symmetric(3).unwrap()));
    out.push(Arc::new(FiniteGroup::dihedral(4).unwrap()));
    out.push(quaternion_group());
    out
}

/// Small abelian fixtures used by reduction properties.
pub fn abelian_fixtures() -> Vec<Arc<FiniteGroup>> {
    default_fixtures()
        .into_iter()
        .filter(|g| g.is_abelian())
        .collect()
}
