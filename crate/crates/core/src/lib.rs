pub mod boundlib;
pub mod gfplin;
pub mod graphcert;
pub mod orbitengine;
pub mod permsym;
pub mod repkit;
pub mod spechtmod;
