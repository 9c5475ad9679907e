#pragma once

#include <gkktau/rational.hpp>
#include <gkktau/index_set.hpp>
#include <gkktau/matrix.hpp>
#include <gkktau/polynomial.hpp>
#include <gkktau/family.hpp>
#include <gkktau/charpoly.hpp>
#include <gkktau/rootfind.hpp>
#include <gkktau/hurwitz.hpp>
#include <gkktau/parallel.hpp>
#include <gkktau/classify.hpp>
#include <gkktau/io.hpp>
#include <gkktau/verify.hpp>
