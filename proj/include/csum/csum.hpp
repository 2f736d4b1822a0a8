/*
 * Copyright 2026 The csum Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CSUM_CSUM_HPP
#define CSUM_CSUM_HPP

#include "csum/collapse.hpp"
#include "csum/errors.hpp"
#include "csum/exact.hpp"
#include "csum/image_blur.hpp"
#include "csum/kernels.hpp"
#include "csum/matrix.hpp"
#include "csum/netpbm.hpp"
#include "csum/pipeline.hpp"
#include "csum/structured.hpp"

#endif  // CSUM_CSUM_HPP
