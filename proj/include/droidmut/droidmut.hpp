#ifndef DROIDMUT_DROIDMUT_HPP
#define DROIDMUT_DROIDMUT_HPP

// Umbrella header for the whole toolkit.

#include "droidmut/config.hpp"
#include "droidmut/core.hpp"
#include "droidmut/formats.hpp"
#include "droidmut/java_view.hpp"
#include "droidmut/mutation.hpp"
#include "droidmut/operator_catalog.hpp"
#include "droidmut/pfp.hpp"
#include "droidmut/project_model.hpp"
#include "droidmut/report.hpp"
#include "droidmut/rng.hpp"
#include "droidmut/source_file.hpp"
#include "droidmut/unified_diff.hpp"
#include "droidmut/verify.hpp"
#include "droidmut/xml_view.hpp"

#endif // DROIDMUT_DROIDMUT_HPP
