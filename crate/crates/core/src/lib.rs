pub mod exactpoly;
pub mod roots;
pub mod thetacount;
pub mod quartic;
pub mod trace;
pub mod analysis;
pub mod sepbodies;
