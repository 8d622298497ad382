//! Periodicity, fractional revival (FR) and pretty good fractional revival
//! (PGFR), decided exactly from spectra and cross-checked against the closed
//! forms in [`classify`].

mod classify;
mod decide;
mod lattice;

pub use classify::{
    classify, classify_quadratic, classify_unitary, quadratic_is_integral,
    two_odd_primes_obstruct_pgfr, ClassificationRecord, Sources,
};
pub use decide::{
    certificate_is_valid, decide_fr, decide_pgfr, difference_matrix, fr_witness_is_valid,
    is_periodic, relation_lattice, Certificate, FrVerdict, Obstruction, PgfrVerdict,
};
pub use lattice::{integer_kernel, RelationLattice};

use crate::error::Result;
use crate::graphs::Family;
use crate::spectra::Spectrum;

/// Closed-form record next to the verdicts computed from the spectrum.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub record: ClassificationRecord,
    pub spectrum: Spectrum,
    pub periodic: bool,
    pub fr: FrVerdict,
    pub pgfr: PgfrVerdict,
}

impl Analysis {
    pub fn run(family: Family, n: u64) -> Result<Self> {
        let spectrum = Spectrum::of(family, n)?;
        Ok(Self {
            record: classify(family, n),
            periodic: is_periodic(&spectrum),
            fr: decide_fr(&spectrum),
            pgfr: decide_pgfr(&spectrum),
            spectrum,
        })
    }

    /// Names of the phenomena on which the closed form and the decision
    /// procedures disagree. Non-empty means a bug.
    pub fn disagreements(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.periodic != self.record.periodic {
            out.push("periodic");
        }
        if self.fr.holds != self.record.fr {
            out.push("fr");
        }
        if self.pgfr.holds != self.record.pgfr {
            out.push("pgfr");
        }
        if self.fr.holds && !self.pgfr.holds {
            out.push("hierarchy");
        }
        if !self.record.hierarchy_holds() {
            out.push("record-hierarchy");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let r = &self.record;
        serde_json::json!({
            "family": r.family.symbol(),
            "n": r.n,
            "closed_form": {
                "periodic": r.periodic,
                "pst": r.pst,
                "pgst": r.pgst,
                "fr": r.fr,
                "pgfr": r.pgfr,
                "source": serde_json::to_value(&r.source).expect("plain strings"),
            },
            "decided": {
                "periodic": self.periodic,
                "fr": self.fr.to_json(),
                "pgfr": self.pgfr.to_json(),
            },
            "agreement": self.disagreements().is_empty(),
            "disagreements": self.disagreements(),
        })
    }
}
