//! Quadrature-based assembly of the Galerkin, residual-based and multilevel
//! stabilization forms, and Dirichlet constraint application.

mod dirichlet;
mod element;
mod forms;
mod mq;
mod norms;
mod problem;
mod quadrature;

pub(crate) use element::Integrator;
pub use dirichlet::{apply_dirichlet, dirichlet_lift, DiscreteSystem};
pub use forms::{
    assemble_galerkin, assemble_load, assemble_mass, assemble_stiffness, assemble_streamline_matrix,
    assemble_supg, assemble_weighted_mass, streamline_length, supg_tau,
};
pub use mq::assemble_mq_stabilization;
pub use norms::{mq_norm_squared, mqsd_norm_squared, NormMatrices};
pub use problem::{
    constant, constant_vector, scalar, vector, BoundaryCondition, ExactSolution, Method, ProblemSpec,
    ScalarFn, StabConfig, VectorFn,
};
pub use quadrature::{quadrature_rule, GaussRule};
