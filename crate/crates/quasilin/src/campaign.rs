//! Verification campaigns: exhaustive cross-validation of every theorem
//! criterion against the brute-force oracle, and parastrophe-orthogonality
//! sweeps over a single group.
//!
//! Campaigns fan out across workers with rayon but merge results in form
//! order, so reports are identical for any parallelism degree.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::expr::EvalScratch;
use crate::form::{
    parastrophe_table, ConstantPlacement, FormClass, ParastropheLabel, Quasigroup, QuasigroupForm,
};
use crate::group::{FiniteGroup, GroupError};
use crate::morphism::{Morphism, MorphismError};
use crate::ortho::{
    orthogonal_bruteforce_with, orthogonal_by_criterion_with, parastrophe_orthogonality_with,
    BruteScratch, CriterionId, OrthoError,
};
use crate::sweep::enumerate_forms;

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("class {0} has no closed parastrophe theory; nothing to campaign")]
    UnsupportedClass(FormClass),
    #[error("exhaustive campaign over {group} would enumerate too many forms; pass a sample size and seed")]
    SamplingRequired { group: String },
    #[error("symmetric-group campaigns cover degrees 3..=5, got {0}")]
    SnDegree(usize),
}

/// Seeded sampling parameters for campaigns too large to exhaust.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub size: usize,
    pub seed: u64,
}

/// One validated instance of a parastrophe campaign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignRecord {
    pub form_spec: String,
    pub theorem: bool,
    pub brute: bool,
}

impl CampaignRecord {
    pub fn agree(&self) -> bool {
        self.theorem == self.brute
    }
}

/// Result of sweeping one class over one group against one parastrophe.
#[derive(Debug, Clone)]
pub struct ParastropheCampaign {
    pub group: String,
    pub class: FormClass,
    pub sigma: ParastropheLabel,
    pub records: Vec<CampaignRecord>,
    pub orthogonal: u64,
    pub discrepancies: u64,
    /// Set when a covering impossibility result predicts zero orthogonal
    /// instances for this class/parastrophe over this carrier.
    pub corollary_expects_zero: bool,
    pub sampling: Option<Sampling>,
}

impl ParastropheCampaign {
    pub fn total(&self) -> u64 {
        self.records.len() as u64
    }

    pub fn is_clean(&self) -> bool {
        self.discrepancies == 0
    }

    pub fn summary_line(&self) -> String {
        let corollary = if self.corollary_expects_zero {
            let verdict = if self.orthogonal == 0 { "holds" } else { "VIOLATED" };
            format!(", zero-orthogonal prediction {verdict}")
        } else {
            String::new()
        };
        format!(
            "{} class={} parastrophe={}: {} forms, {} orthogonal, {} discrepancies{}",
            self.group,
            self.class,
            self.sigma,
            self.total(),
            self.orthogonal,
            self.discrepancies,
            corollary
        )
    }
}

/// Exhaustive sweep of every form of `class` over `group`, deciding
/// orthogonality against the sigma-parastrophe along both paths.
pub fn parastrophe_campaign(
    group: &Arc<FiniteGroup>,
    class: FormClass,
    sigma: ParastropheLabel,
) -> Result<ParastropheCampaign, CampaignError> {
    if CriterionId::for_parastrophe(class, sigma).is_none() {
        return Err(CampaignError::UnsupportedClass(class));
    }
    let forms = enumerate_forms(group, class, false)?;
    run_parastrophe_campaign(group, class, sigma, forms, None)
}

/// Seeded random sweep for carriers whose automorphism group is too large
/// to enumerate. Components are drawn as conjugations, so the sweep covers
/// all of `Aut` exactly when every automorphism of the carrier is inner
/// (true for the symmetric groups this is used with).
pub fn sampled_parastrophe_campaign(
    group: &Arc<FiniteGroup>,
    class: FormClass,
    sigma: ParastropheLabel,
    sampling: Sampling,
) -> Result<ParastropheCampaign, CampaignError> {
    if CriterionId::for_parastrophe(class, sigma).is_none() {
        return Err(CampaignError::UnsupportedClass(class));
    }
    let g = &**group;
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let (first_anti, second_anti) = {
        use FormClass::*;
        match class {
            Linear | TQuasigroup => (false, false),
            Alinear => (true, true),
            LeftLinearRightAlinear => (false, true),
            LeftAlinearRightLinear => (true, false),
            one_sided => return Err(CampaignError::UnsupportedClass(one_sided)),
        }
    };
    fn random_component(g: &FiniteGroup, rng: &mut ChaCha8Rng, anti: bool) -> Morphism {
        let a = rng.gen_range(0..g.order());
        let inner = Morphism::inner(g, a);
        if anti {
            let map = g.elements().map(|x| g.neg(inner.apply(x))).collect();
            Morphism::classify(g, map).unwrap()
        } else {
            inner
        }
    }
    let mut forms = Vec::with_capacity(sampling.size);
    for _ in 0..sampling.size {
        let first = random_component(g, &mut rng, first_anti);
        let second = random_component(g, &mut rng, second_anti);
        let c = rng.gen_range(0..g.order());
        forms.push(
            QuasigroupForm::with_orientation(
                Arc::clone(group),
                class,
                first,
                second,
                c,
                ConstantPlacement::Right,
                false,
            )
            .expect("sampled components satisfy the class tags"),
        );
    }
    run_parastrophe_campaign(group, class, sigma, forms, Some(sampling))
}

fn run_parastrophe_campaign(
    group: &Arc<FiniteGroup>,
    class: FormClass,
    sigma: ParastropheLabel,
    forms: Vec<QuasigroupForm>,
    sampling: Option<Sampling>,
) -> Result<ParastropheCampaign, CampaignError> {
    let records: Result<Vec<CampaignRecord>, CampaignError> = forms
        .par_iter()
        .map_init(
            || (EvalScratch::new(), BruteScratch::default()),
            |(es, bs), form| {
                let theorem = parastrophe_orthogonality_with(form, sigma, es)?;
                let table = form.materialize();
                let mate = parastrophe_table(&table, sigma);
                let brute = orthogonal_bruteforce_with(&table, &mate, bs)?;
                Ok(CampaignRecord {
                    form_spec: form.to_spec(),
                    theorem: theorem.orthogonal,
                    brute: brute.orthogonal,
                })
            },
        )
        .collect();
    let records = records?;
    let orthogonal = records.iter().filter(|r| r.brute && r.agree()).count() as u64;
    let discrepancies = records.iter().filter(|r| !r.agree()).count() as u64;
    Ok(ParastropheCampaign {
        group: group.label().to_string(),
        class,
        sigma,
        records,
        orthogonal,
        discrepancies,
        corollary_expects_zero: symmetric_corollary_expects_zero(group, class, sigma),
        sampling,
    })
}

/// Over S_n (n not 2 or 6) every automorphism is inner, which kills the
/// quantified criteria for these class/parastrophe combinations.
fn symmetric_corollary_expects_zero(
    group: &FiniteGroup,
    class: FormClass,
    sigma: ParastropheLabel,
) -> bool {
    use FormClass::*;
    use ParastropheLabel as P;
    let symmetric_degree: Option<usize> = group
        .label()
        .strip_prefix('S')
        .and_then(|d| d.parse().ok());
    match symmetric_degree {
        Some(n) if n != 2 && n != 6 => {}
        _ => return false,
    }
    matches!(
        (class, sigma),
        (Linear, P::S12)
            | (Alinear, P::S12 | P::S13 | P::S23)
            | (LeftLinearRightAlinear, P::S132)
            | (LeftAlinearRightLinear, P::S13 | P::S123)
    )
}

/// Campaign over the symmetric group of the given degree. Degrees 3 and 4
/// are exhaustive; degree 5 has |Aut|^2 * 120 forms per class and requires
/// sampling.
pub fn sn_campaign(
    degree: usize,
    class: FormClass,
    sigma: ParastropheLabel,
    sampling: Option<Sampling>,
) -> Result<ParastropheCampaign, CampaignError> {
    if !(3..=5).contains(&degree) {
        return Err(CampaignError::SnDegree(degree));
    }
    let group = Arc::new(FiniteGroup::symmetric(degree)?);
    if degree == 5 {
        let sampling = sampling.ok_or(CampaignError::SamplingRequired {
            group: group.label().to_string(),
        })?;
        sampled_parastrophe_campaign(&group, class, sigma, sampling)
    } else {
        parastrophe_campaign(&group, class, sigma)
    }
}

/// Aggregate counts for one criterion over one fixture group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidationEntry {
    pub criterion: CriterionId,
    pub group: String,
    pub instances: u64,
    pub orthogonal: u64,
    pub discrepancies: u64,
}

/// A theorem/brute-force disagreement with full reproduction data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub criterion: CriterionId,
    pub group: String,
    pub form_a: String,
    pub form_b: Option<String>,
    pub theorem: bool,
    pub brute: bool,
}

#[derive(Debug, Clone, Default)]
pub struct CrossValidationSummary {
    pub entries: Vec<CrossValidationEntry>,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossValidationSummary {
    pub fn total_instances(&self) -> u64 {
        self.entries.iter().map(|e| e.instances).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} instances across {} criterion/group sweeps, {} discrepancies",
            self.total_instances(),
            self.entries.len(),
            self.discrepancies.len()
        )
    }
}

/// Runs every criterion in the catalog over every fixture group, comparing
/// the theorem verdict with the brute-force verdict on all admissible form
/// pairs. Disagreements become report contents, never panics.
pub fn cross_validate(fixtures: &[Arc<FiniteGroup>]) -> Result<CrossValidationSummary, CampaignError> {
    cross_validate_criteria(fixtures, CriterionId::ALL)
}

/// As [`cross_validate`] but over a chosen subset of the catalog.
pub fn cross_validate_criteria(
    fixtures: &[Arc<FiniteGroup>],
    criteria: &[CriterionId],
) -> Result<CrossValidationSummary, CampaignError> {
    let mut summary = CrossValidationSummary::default();
    for id in criteria {
        for group in fixtures {
            let (entry, discrepancies) = if id.is_pair_criterion() {
                validate_pair_criterion(*id, group)?
            } else {
                validate_parastrophe_criterion(*id, group)?
            };
            summary.entries.push(entry);
            summary.discrepancies.extend(discrepancies);
        }
    }
    Ok(summary)
}

fn validate_pair_criterion(
    id: CriterionId,
    group: &Arc<FiniteGroup>,
) -> Result<(CrossValidationEntry, Vec<Discrepancy>), CampaignError> {
    let ((class_a, transposed_a), (class_b, transposed_b)) =
        id.sweep_shape().expect("pair criterion");
    let forms_a = enumerate_forms(group, class_a, transposed_a)?;
    let forms_b = enumerate_forms(group, class_b, transposed_b)?;
    let tables_a: Vec<Quasigroup> = forms_a.iter().map(|f| f.materialize()).collect();
    let tables_b: Vec<Quasigroup> = forms_b.iter().map(|f| f.materialize()).collect();

    let per_row: Result<Vec<(u64, u64, Vec<Discrepancy>)>, CampaignError> = forms_a
        .par_iter()
        .enumerate()
        .map_init(
            || (EvalScratch::new(), BruteScratch::default()),
            |(es, bs), (i, fa)| {
                let mut orthogonal = 0;
                let mut instances = 0;
                let mut discrepancies = Vec::new();
                for (j, fb) in forms_b.iter().enumerate() {
                    let theorem = orthogonal_by_criterion_with(id, fa, fb, es)?;
                    let brute = orthogonal_bruteforce_with(&tables_a[i], &tables_b[j], bs)?;
                    instances += 1;
                    if theorem.orthogonal != brute.orthogonal {
                        discrepancies.push(Discrepancy {
                            criterion: id,
                            group: group.label().to_string(),
                            form_a: fa.to_spec(),
                            form_b: Some(fb.to_spec()),
                            theorem: theorem.orthogonal,
                            brute: brute.orthogonal,
                        });
                    } else if brute.orthogonal {
                        orthogonal += 1;
                    }
                }
                Ok((instances, orthogonal, discrepancies))
            },
        )
        .collect();

    let mut entry = CrossValidationEntry {
        criterion: id,
        group: group.label().to_string(),
        instances: 0,
        orthogonal: 0,
        discrepancies: 0,
    };
    let mut all = Vec::new();
    for (instances, orthogonal, discrepancies) in per_row? {
        entry.instances += instances;
        entry.orthogonal += orthogonal;
        entry.discrepancies += discrepancies.len() as u64;
        all.extend(discrepancies);
    }
    Ok((entry, all))
}

fn validate_parastrophe_criterion(
    id: CriterionId,
    group: &Arc<FiniteGroup>,
) -> Result<(CrossValidationEntry, Vec<Discrepancy>), CampaignError> {
    let class = id.parastrophe_sweep_class().expect("parastrophe criterion");
    let sigma = id.sigma().expect("parastrophe criterion");
    let forms = enumerate_forms(group, class, false)?;
    let per_form: Result<Vec<(bool, Option<Discrepancy>)>, CampaignError> = forms
        .par_iter()
        .map_init(
            || (EvalScratch::new(), BruteScratch::default()),
            |(es, bs), form| {
                let theorem = parastrophe_orthogonality_with(form, sigma, es)?;
                let table = form.materialize();
                let mate = parastrophe_table(&table, sigma);
                let brute = orthogonal_bruteforce_with(&table, &mate, bs)?;
                let disc = (theorem.orthogonal != brute.orthogonal).then(|| Discrepancy {
                    criterion: id,
                    group: group.label().to_string(),
                    form_a: form.to_spec(),
                    form_b: None,
                    theorem: theorem.orthogonal,
                    brute: brute.orthogonal,
                });
                Ok((brute.orthogonal && disc.is_none(), disc))
            },
        )
        .collect();
    let mut entry = CrossValidationEntry {
        criterion: id,
        group: group.label().to_string(),
        instances: 0,
        orthogonal: 0,
        discrepancies: 0,
    };
    let mut all = Vec::new();
    for (orthogonal, disc) in per_form? {
        entry.instances += 1;
        if orthogonal {
            entry.orthogonal += 1;
        }
        if let Some(d) = disc {
            entry.discrepancies += 1;
            all.push(d);
        }
    }
    Ok((entry, all))
}
