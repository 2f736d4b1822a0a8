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

#ifndef CSUM_IMAGE_BLUR_HPP
#define CSUM_IMAGE_BLUR_HPP

#include <variant>

#include "csum/netpbm.hpp"
#include "csum/pipeline.hpp"

namespace csum {

/// Blurs one plane in scalar mode S and quantizes back to the plane's maxval.
template <Scalar S>
ImagePlane blur_plane(const ImagePlane& plane, const BlurRequest& req) {
  return quantize_plane(blur(matrix_cast<S>(plane.samples), req), plane.maxval);
}

inline ImagePlane blur_plane(const ImagePlane& plane, const BlurRequest& req, ScalarMode mode) {
  return mode == ScalarMode::ExactInt ? blur_plane<Exact>(plane, req) : blur_plane<double>(plane, req);
}

/// Color images are blurred plane by plane.
inline Image blur_image(const Image& img, const BlurRequest& req, ScalarMode mode) {
  if (const auto* gray = std::get_if<ImagePlane>(&img)) return blur_plane(*gray, req, mode);
  const auto& c = std::get<ColorImage>(img);
  return ColorImage{blur_plane(c.red, req, mode), blur_plane(c.green, req, mode), blur_plane(c.blue, req, mode)};
}

}  // namespace csum

#endif  // CSUM_IMAGE_BLUR_HPP
