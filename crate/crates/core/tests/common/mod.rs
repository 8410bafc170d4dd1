#![allow(dead_code)]

use std::sync::OnceLock;

use g2kit::cohomology::OrbifoldCohomology;
use g2kit::exterior::standard_g2_form;
use g2kit::locus::{strata, Stratum};
use g2kit::orbifold::{closure, IsometryGroup, TorusLattice, DEFAULT_GROUP_BOUND};
use g2kit::preset::{paper_anchors, paper_generators};
use g2kit::resolution::ResolutionModel;

pub struct Paper {
    pub lattice: TorusLattice,
    pub group: IsometryGroup,
    pub strata: Vec<Stratum>,
    pub model: ResolutionModel,
}

pub fn paper() -> &'static Paper {
    static PAPER: OnceLock<Paper> = OnceLock::new();
    PAPER.get_or_init(|| {
        let lattice = TorusLattice::paper();
        let group = closure(&lattice, &paper_generators(&lattice), DEFAULT_GROUP_BOUND).unwrap();
        let strata = strata(&group, &standard_g2_form(), &paper_anchors()).unwrap();
        let model = ResolutionModel::new(OrbifoldCohomology::new(&group), strata.clone());
        Paper { lattice, group, strata, model }
    })
}
