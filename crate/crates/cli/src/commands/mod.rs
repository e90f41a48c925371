pub mod corpus;
pub mod forms;
pub mod homot;
pub mod intl;
pub mod linf;
pub mod simpset;
pub mod string;

/// `le` for `τ≤n`, `lt` for `τ<n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Le,
    Lt,
}
