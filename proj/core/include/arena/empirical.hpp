#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace arena {

inline constexpr int kFirstWeekHours = 168;
inline constexpr int kProfileHours = 48;

// Hourly view counts of one video, indexed by hours since publication
// (index 0 = publication hour). published_hour is a UTC timestamp expressed
// in whole hours since the Unix epoch. observed_hours is how many hours of
// the video's life fall inside the dataset's observation window.
struct VideoSeries {
    std::string channel_id;
    std::string video_id;
    std::int64_t published_hour = 0;
    std::vector<std::int64_t> hourly_views;
    std::int64_t observed_hours = kFirstWeekHours;

    std::int64_t views_at(std::int64_t hour_since_pub) const {
        if (hour_since_pub < 0 ||
            hour_since_pub >= static_cast<std::int64_t>(hourly_views.size()))
            return 0;
        return hourly_views[static_cast<std::size_t>(hour_since_pub)];
    }
    std::int64_t first_week_views() const;
};

// All of one channel's videos plus the shared observation window.
struct ChannelDataset {
    std::string channel_id;
    std::vector<VideoSeries> videos;
    std::int64_t window_start = 0;  // UTC hours since epoch
    std::int64_t window_end = 0;    // exclusive
};

struct VideoMetrics {
    std::string channel_id;
    std::string video_id;
    std::optional<int> lifecycle_hours;  // 1..168
    std::optional<int> peak_hour;        // hours since publication
    std::optional<double> peak_hour_share;
    double gini_hourly = 0.0;
    std::int64_t first_week_views = 0;
};

struct PeakShare {
    int peak_hour = 0;
    double share = 0.0;
};

// Mean normalized view share per hour since publication over the first two
// days, averaged across a channel's videos with positive first-week views.
struct TemporalProfile {
    std::array<double, kProfileHours> mean_share{};
    int videos = 0;
};

struct ChannelSummary {
    std::string channel_id;
    std::optional<double> mean_lifecycle_hours;
    double mean_gini = 0.0;
    int videos = 0;
    std::int64_t total_views = 0;
};

// Parses the input CSV `channel_id,video_id,published_at,t_hour,views`
// (header required, published_at ISO 8601 UTC truncated to the hour).
// Missing hours are filled with zero views; videos sorted by published_at,
// channels by id. Throws std::invalid_argument naming line and field on any
// malformed, negative, or duplicate row.
std::vector<ChannelDataset> load_dataset(std::istream& input);

// Hours needed to accumulate 95% of the first week's views (>= comparison);
// absent when the first-week total is zero.
std::optional<int> video_lifecycle_95(const VideoSeries& video);

// Earliest first-week hour with the video's maximum views, and the video's
// share of the whole channel's views in that wall-clock hour. Absent for
// videos with no first-week views.
std::optional<PeakShare> peak_hour_share(const VideoSeries& video,
                                         const ChannelDataset& channel);

// Gini of the first-week hourly view vector (168 entries, zero-padded).
double gini_hourly(const VideoSeries& video);

// Throws std::invalid_argument when the channel has no video with positive
// first-week views.
TemporalProfile average_temporal_profile(const ChannelDataset& channel);

VideoMetrics video_metrics(const VideoSeries& video,
                           const ChannelDataset& channel);

ChannelSummary channel_summary(const ChannelDataset& channel);

// Output tables (schemas match the CSV writers' headers).
void write_video_metrics_csv(const std::vector<ChannelDataset>& channels,
                             std::ostream& out);
void write_channel_summary_csv(const std::vector<ChannelDataset>& channels,
                               std::ostream& out);
void write_profile_csv(const std::vector<ChannelDataset>& channels,
                       std::ostream& out);

// Canonical gap-filled form of the dataset, same schema as the input;
// deterministic given equal logical content.
void write_dataset_csv(const std::vector<ChannelDataset>& channels,
                       std::ostream& out);

// `2019-12-09T14:00:00Z` -> hours since epoch; throws on malformed input or
// nonzero minutes/seconds.
std::int64_t parse_utc_hour(const std::string& text);
std::string format_utc_hour(std::int64_t hours_since_epoch);

}  // namespace arena
