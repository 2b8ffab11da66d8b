//! Command line tools and the session service for learning partial orders.

pub mod commands;
pub mod montecarlo;
pub mod server;
pub mod session;
