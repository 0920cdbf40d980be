#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "curvematch/descriptors.hpp"
#include "curvematch/spectral.hpp"

namespace curvematch {

// Binary container: 4 magic bytes, u32 version, dimensions, then row-major
// little-endian 64-bit floats. "CMBN" carries one matrix plus a kind tag,
// "CMSB" a spectral basis (eigenvalues, mass, eigenfunctions).

void write_matrix(std::ostream& out, const Eigen::MatrixXd& matrix, std::uint32_t kind = 0);
Eigen::MatrixXd read_matrix(std::istream& in, std::uint32_t* kind = nullptr);

void save_descriptor_field(const DescriptorField& field, const std::filesystem::path& path);
DescriptorField load_descriptor_field(const std::filesystem::path& path);

void save_basis(const SpectralBasis& basis, const std::filesystem::path& path);
SpectralBasis load_basis(const std::filesystem::path& path);

// JSON forms for small instances.
std::string descriptor_field_json(const DescriptorField& field);
DescriptorField descriptor_field_from_json(const std::string& text);
std::string basis_json(const SpectralBasis& basis);
SpectralBasis basis_from_json(const std::string& text);

}  // namespace curvematch
