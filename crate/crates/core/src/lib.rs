pub mod cq;
pub mod fixtures;
pub mod rdf;
pub mod reasoner;
pub mod temporal;
pub mod validator;
pub mod vocab;
