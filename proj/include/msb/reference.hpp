#pragma once

#include "msb/image.hpp"

namespace msb::reference {

// Serial implementations that take a different algorithmic route than the
// production kernels (direct 2D convolution instead of separable passes,
// full sort instead of nth_element, per-window statistics instead of
// sliding convolutions). Used by tests to cross-check the fast paths.

Image gaussian_blur(const Image& img, int radius);

Image median_filter(const Image& img, int kernel);

Image adaptive_median_filter(const Image& img, int kernel, double threshold);

double psnr(const Image& a, const Image& b);

double ssim(const Image& a, const Image& b);

}  // namespace msb::reference
