#pragma once

#include "advrob/bounds/bounds.hpp"
#include "advrob/classifiers/classifier.hpp"
#include "advrob/classifiers/serialize.hpp"
#include "advrob/classifiers/training.hpp"
#include "advrob/data/csv.hpp"
#include "advrob/data/dataset.hpp"
#include "advrob/data/moments.hpp"
#include "advrob/data/running_example.hpp"
#include "advrob/numerics/eigen.hpp"
#include "advrob/numerics/parallel.hpp"
#include "advrob/numerics/random.hpp"
#include "advrob/numerics/roots.hpp"
#include "advrob/robustness/rho.hpp"
