#include "wildfire/curriculum.hpp"

#include <stdexcept>

namespace wildfire {

std::vector<Lesson> default_lessons() {
  std::vector<Lesson> lessons;
  lessons.reserve(10);
  for (int i = 1; i <= 10; ++i) {
    Lesson lesson;
    lesson.name = "Lesson" + std::to_string(i);
    lesson.difficulty_value = i;
    if (i < 10) {
      lesson.threshold = 900.0 + 50.0 * (i - 1);
    }
    lessons.push_back(lesson);
  }
  return lessons;
}

Curriculum::Curriculum(std::vector<Lesson> lessons, double smoothing)
    : lessons_(std::move(lessons)), smoothing_(smoothing) {
  if (lessons_.empty()) throw std::invalid_argument("curriculum needs at least one lesson");
}

bool Curriculum::update(CurriculumState& state, double episode_reward) const {
  state.episodes_in_lesson += 1;
  state.smoothed_reward =
      smoothing_ * state.smoothed_reward + (1.0 - smoothing_) * episode_reward;

  const Lesson& lesson = lessons_[state.lesson_index];
  if (!lesson.threshold) return false;  // final lesson never completes
  if (state.episodes_in_lesson < lesson.min_length) return false;
  if (state.smoothed_reward < *lesson.threshold) return false;

  state.lesson_index += 1;
  state.episodes_in_lesson = 0;  // smoothed reward carries over
  return true;
}

int Curriculum::current_difficulty(const CurriculumState& state) const {
  return lessons_[state.lesson_index].difficulty_value;
}

const Lesson& Curriculum::lesson(const CurriculumState& state) const {
  return lessons_[state.lesson_index];
}

}  // namespace wildfire
