#pragma once

#include "msb/image.hpp"

namespace msb {

// Separable Gaussian blur, kernel (2r+1) x (2r+1), sigma = r/2, truncated
// at the window and renormalized to sum 1; replicate padding at image
// borders; output clamped to [0, 255]. Throws on r outside {1, ..., 6}.
Image gaussian_blur(const Image& img, int radius);

// Same arithmetic restricted to the given output region (which must lie
// inside the image); bit-identical to cropping gaussian_blur's output.
Image gaussian_blur_region(const Image& img, const Rect& region, int radius);

// Per-channel median over a kernel x kernel window, replicate padding.
// Kernel must be odd and positive.
Image median_filter(const Image& img, int kernel);

// Selective median: a pixel is replaced by its window median only when it
// exceeds that median by more than `threshold`; everything else passes
// through, so dark impulses are preserved.
Image adaptive_median_filter(const Image& img, int kernel, double threshold);

}  // namespace msb
