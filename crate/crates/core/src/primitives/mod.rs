//! Distributed building blocks: participant routing, clique aggregation,
//! shortcut lists, orientation, Euler tours and sorting.

pub mod clique;
pub mod route;
pub mod vlist;
pub mod upath;
pub mod orient;
pub mod overlay;
pub mod euler;
pub mod sort;
pub mod boruvka;
