#include "topicdx/topic.hpp"

namespace topicdx::topic {

namespace {

struct Row {
  const char* name;
  const char* question;
};

// One sample question per topic; topics 76-83 are the key topics.
constexpr Row kTopics[] = {
    {"more", "can you tell me about that"},
    {"why", "why"},
    {"last_happy_time", "tell me about the last time you felt really happy"},
    {"origin", "where are you from originally"},
    {"argue", "when was the last time you argued with someone and what was it about"},
    {"advice_ago", "what advice would you give to yourself ten or twenty years ago"},
    {"control_temper", "how are you at controlling your temper"},
    {"things_like_la", "what are some things you really like about l_a"},
    {"proud", "what are you most proud of in your life"},
    {"positive_influence", "who's someone that's been a positive influence in your life"},
    {"best_friend_describe", "how would your best friend describe you"},
    {"things_dont_like_la", "what are some things you don't really like about l_a"},
    {"major", "what did you study at school"},
    {"regret", "is there anything you regret"},
    {"dream_job", "what's your dream job"},
    {"enjoy_travel", "what do you enjoy about traveling"},
    {"how_hard", "how hard is that"},
    {"do_sleep_not_well", "what are you like when you don't sleep well"},
    {"experiences", "what's one of your most memorable experiences"},
    {"hardest_decision", "tell me about the hardest decision you've ever had to make"},
    {"fun_relax", "what are some things you like to do for fun"},
    {"handle_differently", "tell me about a situation that you wish you had handled differently"},
    {"what_decide", "what made you decide to do that"},
    {"still_work", "are you still doing that"},
    {"erase_memory",
     "tell me about an event or something that you wish you could erase from your memory"},
    {"why_move_la", "why did you move to l_a"},
    {"change_self", "what are some things you wish you could change about yourself"},
    {"best_quality", "what would you say are some of your best qualities"},
    {"often_back", "how often do you go back to your home town"},
    {"how_long_diagnose", "how long ago were you diagnosed"},
    {"guilty", "what's something you feel guilty about"},
    {"when_move_la", "when did you move to l_a"},
    {"easy_used_la", "how easy was it for you to get used to living in l_a"},
    {"seek_help", "what got you to seek help"},
    {"when_last_happy", "when was the last time you felt really happy"},
    {"cope", "how do you cope with them"},
    {"compare_la", "how does it compare to l_a"},
    {"hard_parent", "what's the hardest thing about being a parent"},
    {"still_therapy", "do you still go to therapy now"},
    {"travel_a_lot", "do you travel a lot"},
    {"ever_served_military", "have you ever served in the military"},
    {"when_last_time", "when was the last time that happened"},
    {"best_parent", "what's the best thing about being a parent"},
    {"are_you_okay", "are you okay with this"},
    {"mad", "what are some things that make you really mad"},
    {"they_triggered", "are they triggered by something"},
    {"easy_parent", "do you find it easy to be a parent"},
    {"happy_did_that", "are you happy you did that"},
    {"therapist_affect", "how has seeing a therapist affected you"},
    {"job", "what are you"},
    {"symptoms", "what were your symptoms"},
    {"ideal_weekend", "tell me how you spend your ideal weekend"},
    {"avoid", "could you have done anything to avoid it"},
    {"do_annoyed", "what do you do when you are annoyed"},
    {"got_in_trouble", "has that gotten you in trouble"},
    {"your_kid", "tell me about your kids"},
    {"someone_made_bad", "tell me about a time when someone made you feel really badly about yourself"},
    {"different_parent", "what are some ways that you're different as a parent than your parents"},
    {"today_kid", "what do you think of today's kids"},
    {"down", "do you feel down"},
    {"how_know_them", "how do you know them"},
    {"feel_often", "do you feel that way often"},
    {"problem_before", "did you think you had a problem before you found out"},
    {"living_situation", "how do you like your living situation"},
    {"why_stop", "why did you stop"},
    {"how_do_you_do", "how are you doing today"},
    {"roommate", "do you have roommates"},
    {"hard_on_yourself", "do you think that maybe you're being a little hard on yourself"},
    {"like_living_with", "what's it like for you living with them"},
    {"disturb_thought", "do you have disturbing thoughts"},
    {"where_live", "where do you live"},
    {"after_millitary", "what did you do after the military"},
    {"combat", "did you ever see combat"},
    {"talk_later", "why don't we talk about that later"},
    {"military_change", "how did serving in the military change you"},
    {"change_behavior", "have you noticed any changes in your behavior or thoughts lately"},
    {"depression", "have you been diagnosed with depression"},
    {"easy_sleep", "how easy is it for you to get a good night sleep"},
    {"family_close", "how close are you to your family"},
    {"feeling_lately", "how have you been feeling lately"},
    {"shy_outgoing", "do you consider yourself an introvert"},
    {"ptsd", "have you ever been diagnosed with p_t_s_d"},
    {"therapy_useful", "do you feel like therapy is useful"},
};

constexpr int kFirstKeyTopic = 76;

}  // namespace

const TopicDictionary& example_dictionary() {
  static const TopicDictionary dict = [] {
    std::vector<TopicEntry> entries;
    int index = 1;
    for (const auto& row : kTopics) {
      TopicEntry e;
      e.index = index;
      e.name = row.name;
      e.is_key_topic = index >= kFirstKeyTopic;
      e.trigger_sentences = {row.question};
      entries.push_back(std::move(e));
      ++index;
    }
    return TopicDictionary(std::move(entries));
  }();
  return dict;
}

}  // namespace topicdx::topic
