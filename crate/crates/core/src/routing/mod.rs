//! Single-source oblivious routing, its evaluation, and lower-bound instances.

mod crude;
mod lower_bounds;
mod oblivious;
mod ratio;

pub use crude::{widest_arborescence, CrudeRouter};
pub use lower_bounds::{
    gen_lowerbound_eulerian, gen_lowerbound_general, lowerbound_certificate, LowerBoundCertificate, LowerBoundInstance,
    PairRouting, RandomPathRouting, ShortestPathRouting,
};
pub use oblivious::{
    crude_routing, find_routing, routed_ratio, ObliviousRouting, RoutingConstruction, RoutingOptions, RoutingStep,
};
pub use ratio::{competitive_ratio, default_demand_family, max_linear_over_unit_demands, worst_case_ratio, WorstCase};
