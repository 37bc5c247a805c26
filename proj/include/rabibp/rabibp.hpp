// rabibp.hpp - umbrella header

#pragma once

#include "rabibp/berryphase.hpp"
#include "rabibp/classicalpath.hpp"
#include "rabibp/controversy.hpp"
#include "rabibp/error.hpp"
#include "rabibp/model.hpp"
#include "rabibp/spectra.hpp"
#include "rabibp/svg.hpp"
#include "rabibp/sweep.hpp"
#include "rabibp/variational.hpp"
