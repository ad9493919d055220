//! Particles on rigged paths: blocks, the moves `M^+_j` / `M^-_j`, the
//! rigging `lambda(P)`, and the bijection `iota` between levels.

mod bijection;
mod blocks;
mod moves;
mod rigging;
mod suites;

pub use bijection::{iota, iota0, iota_inverse};
pub use blocks::{find_blocks, move_domains, particle_count, Block, BlockKind, MoveDomains};
pub use moves::{apply_move, parse_move_word, Dir, Move};
pub use rigging::{rigging, Partition};
pub use suites::{bijection_suite, move_lemma_suite, SuiteReport};
