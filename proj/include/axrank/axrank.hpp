#pragma once

#include "axrank/corpus.hpp"
#include "axrank/credit.hpp"
#include "axrank/indices.hpp"
#include "axrank/ranking.hpp"
#include "axrank/report.hpp"
#include "axrank/synth.hpp"
