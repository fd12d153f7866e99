pub mod ambient;
pub mod domain;
pub mod error;
pub mod fields;
pub mod immersion;
pub mod catalog;
pub mod quadrature;
pub mod boundary;
pub mod integrate;
pub mod umbilic;
pub mod algebra;
pub mod config;
pub mod report;
pub mod suites;
