pub mod basicsets;
pub mod charshur;
pub mod combinat;
pub mod coxeter;
pub mod exactalg;
pub mod genericity;
pub mod hecke;
