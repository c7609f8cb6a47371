/*
   Copyright 2026 The abdyn Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Exact integer linear algebra and polynomial arithmetic.
#ifndef ABDYN_EXACTALG_HPP
#define ABDYN_EXACTALG_HPP

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "int_matrix.hpp"
#include "int_poly.hpp"
#include "lattice.hpp"
#include "roots.hpp"

#endif  // ABDYN_EXACTALG_HPP
