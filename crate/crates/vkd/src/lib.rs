//! Analysis of van Kampen diagrams over finite group presentations.
//!
//! A van Kampen diagram is a finite, contractible, planar 2-complex whose
//! 2-cells are labelled by relators of a presentation and whose boundary
//! reads a given word.  This crate represents such diagrams as
//! rotation-system combinatorial maps and provides:
//!
//! * coarse distance fields measured in integer *quarter* units
//!   ([`diagram::QuarterDist`]), intrinsic diameter, and boundary statistics;
//! * geodesic spanning trees rooted at the basepoint ([`geodesics`]);
//! * icicles — the sub-diagrams swept between the geodesics bounding a
//!   non-tree edge — and the flow bijection from non-tree edges onto
//!   internal faces ([`icicle`]);
//! * discrete tree-respecting 1-combings with tameness profiles and
//!   obstruction detection ([`combing`]);
//! * diagram surgery: gluing, padding, and the pipeline that converts an
//!   arbitrary filling into a geodesically and simply bounded one
//!   ([`surgery`]);
//! * a brute-force enumeration oracle over small fillings ([`oracle`]);
//! * the iterative taming pipeline and an independent certificate checker
//!   ([`taming`]);
//! * SVG rendering of diagrams ([`render`]).

pub mod presentation;
pub mod diagram;
pub mod geodesics;
pub mod icicle;
pub mod combing;
pub mod surgery;
pub mod oracle;
pub mod taming;
pub mod render;
