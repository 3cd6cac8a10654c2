#include "radex/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <string>

#include "radex/error.hpp"

namespace radex {
namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

}  // namespace

ImageGrid read_image(const std::filesystem::path& path) {
  const cv::Mat raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (raw.empty()) throw Error(ErrorCode::kIo, "cannot decode image " + path.string());

  double scale = 1.0;
  switch (raw.depth()) {
    case CV_8U:
      scale = 1.0 / 255.0;
      break;
    case CV_16U:
      scale = 1.0 / 65535.0;
      break;
    case CV_32F:
    case CV_64F:
      break;
    default:
      throw Error(ErrorCode::kIo, "unsupported pixel depth in " + path.string());
  }
  const int src_channels = raw.channels();
  const std::size_t channels = src_channels >= 3 ? 3 : 1;
  cv::Mat values;
  raw.convertTo(values, CV_64F, scale);

  ImageGrid out(static_cast<std::size_t>(values.cols), static_cast<std::size_t>(values.rows),
                channels);
  for (int r = 0; r < values.rows; ++r) {
    const double* row = values.ptr<double>(r);
    for (int c = 0; c < values.cols; ++c) {
      const double* px = row + static_cast<std::ptrdiff_t>(c) * src_channels;
      const auto ur = static_cast<std::size_t>(r);
      const auto uc = static_cast<std::size_t>(c);
      if (channels == 1) {
        out.at(ur, uc) = std::clamp(px[0], 0.0, 1.0);
      } else {
        // OpenCV stores BGR(A).
        out.at(ur, uc, 0) = std::clamp(px[2], 0.0, 1.0);
        out.at(ur, uc, 1) = std::clamp(px[1], 0.0, 1.0);
        out.at(ur, uc, 2) = std::clamp(px[0], 0.0, 1.0);
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> to_8bit(const ImageGrid& image) {
  const auto px = image.pixels();
  std::vector<std::uint8_t> out(px.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::lround(std::clamp(px[i], 0.0, 1.0) * 255.0));
  }
  return out;
}

void write_image(const std::filesystem::path& path, const ImageGrid& image) {
  if (image.channels() != 1 && image.channels() != 3) {
    throw Error(ErrorCode::kChannelMismatch, "can only write 1- or 3-channel images");
  }
  std::vector<std::uint8_t> bytes = to_8bit(image);
  const int type = image.channels() == 1 ? CV_8UC1 : CV_8UC3;
  cv::Mat mat(static_cast<int>(image.height()), static_cast<int>(image.width()), type, bytes.data());
  cv::Mat bgr;
  if (image.channels() == 3) {
    cv::Mat channels[3];
    cv::split(mat, channels);
    std::swap(channels[0], channels[2]);
    cv::merge(channels, 3, bgr);
  } else {
    bgr = mat;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::string ext = lower_extension(path);
  std::string target = path.string();
  if (ext != ".png" && ext != ".pgm") target += ".png";
  if (!cv::imwrite(target, bgr)) throw Error(ErrorCode::kIo, "cannot write image " + target);
}

bool is_image_path(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".pgm";
}

}  // namespace radex
