#pragma once

// Convenience include for the whole library.

#include <trilam/angle.hpp>
#include <trilam/cubic.hpp>
#include <trilam/julia.hpp>
#include <trilam/lamination.hpp>
#include <trilam/parallel.hpp>
#include <trilam/raster.hpp>
#include <trilam/rays.hpp>
#include <trilam/result.hpp>
#include <trilam/seq_lemma.hpp>
#include <trilam/slice.hpp>
