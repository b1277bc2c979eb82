#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wildfire {

struct Lesson {
  std::string name;
  std::optional<double> threshold;  // none for the final lesson
  int min_length = 100;             // episodes before advancement is possible
  int difficulty_value = 1;
};

/// The ten-lesson table: thresholds 900, 950, ..., 1300 and difficulty
/// values 1..10; the final lesson has no completion criteria.
std::vector<Lesson> default_lessons();

struct CurriculumState {
  int lesson_index = 0;  // 0-based into the lesson table
  int episodes_in_lesson = 0;
  double smoothed_reward = 0.0;
};

/// Advances lessons on smoothed episode reward: after each episode the
/// exponential moving average updates, and the lesson completes once at
/// least min_length episodes ran in it and the average reaches the
/// threshold. The lesson index never regresses; the average carries across
/// lessons.
class Curriculum {
 public:
  explicit Curriculum(std::vector<Lesson> lessons = default_lessons(),
                      double smoothing = 0.99);

  /// Returns true when the state advanced to the next lesson.
  bool update(CurriculumState& state, double episode_reward) const;

  int current_difficulty(const CurriculumState& state) const;
  const Lesson& lesson(const CurriculumState& state) const;
  int lesson_count() const { return static_cast<int>(lessons_.size()); }

 private:
  std::vector<Lesson> lessons_;
  double smoothing_;
};

}  // namespace wildfire
