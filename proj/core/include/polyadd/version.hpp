#pragma once

// Reported in CLI manifests; bump on any change that can alter emitted bytes.
#define POLYADD_VERSION "0.1.0"
