#include "orbitspace/pipeline.hpp"

#include "orbitspace/groups.hpp"

namespace orbitspace {

ScaleConvention convention_from(const BasisTransform& reference) {
  ScaleConvention c;
  c.leading[0] = reference.leading(0);
  for (std::size_t a : free_scale_indices(reference.size())) c.leading[a] = reference.leading(a);
  return c;
}

FlatRun run_flat_pipeline(const BasicInvariantSet& s, const PhatOptions& options,
                          const ScaleConvention& convention) {
  PhatResult phat = compute_phat(s, options);
  FlatnessResult flatness = solve_flatness(phat.matrix, options.lane);
  BasisTransform transform = normalize_scales(flatness.transform, phat.matrix, convention);
  BasisTransform inverse = invert_transform(transform);
  PhatMatrix flat = transform_phat(phat.matrix, transform);
  FlatMetric metric = flat_metric(flat);
  return {std::move(phat),  std::move(flatness), std::move(transform),
          std::move(inverse), std::move(flat),   std::move(metric)};
}

VerifyReport verify_group(const std::string& group, const PhatOptions& options,
                          const std::filesystem::path& reference_dir) {
  const ReflectionGroupData& g = catalog(group);
  const ReferenceBundle ref = load_reference(g.name, reference_dir);
  const BasicInvariantSet s = build_basic_invariants(g);
  const FlatRun run = run_flat_pipeline(s, options, convention_from(ref.transform));

  VerifyReport report;
  report.group = g.name;
  report.parameters = run.flatness.parameters;
  const BasisTransform reference{run.phat.matrix.ring(), ref.q_ring, ref.transform.maps};
  report.reference_phat = compare(transform_phat(run.phat.matrix, reference), ref.flat_phat);
  const BasisTransform computed{ref.p_ring, ref.q_ring, run.transform.maps};
  report.flat_transform = compare(computed, ref.transform);
  report.flat_phat = compare(run.flat_phat, ref.flat_phat);
  return report;
}

}  // namespace orbitspace
