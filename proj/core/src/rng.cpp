#include "rwrs/rng.hpp"

// Header-only; this TU just gives the library something to archive and keeps
// the header honest about being self-contained.
