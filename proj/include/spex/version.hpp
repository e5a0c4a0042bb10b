#pragma once

#define SPEX_VERSION_MAJOR 0
#define SPEX_VERSION_MINOR 1
#define SPEX_VERSION_PATCH 0
#define SPEX_VERSION_STRING "0.1.0"
