pub mod expander;
pub mod extract;
pub mod fullgroup;
pub mod near;
pub mod rep;
pub mod sqrt;
