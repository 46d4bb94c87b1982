#pragma once

#include "gcurve/pipeline.hpp"
