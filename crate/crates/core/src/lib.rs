pub mod gsalg;
pub mod liesuper;
pub mod prolong;
pub mod supercalc;
