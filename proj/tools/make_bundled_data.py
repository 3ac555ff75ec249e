#!/usr/bin/env python3
# Copyright 2026 The edupsy Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes data/corpus.jsonl and data/suite.jsonl.

Every (level, subject) group holds four items whose answers are A, B, C, D,
so a constant-letter backend scores exactly 25.0 on each subject.
"""

import json
import pathlib

DOCS = [
    ("math-pythagorean", "勾股定理", "勾股定理指出，直角三角形两条直角边的平方和等于斜边的平方，即 a²+b²=c²。勾股定理的证明方法很多，例如赵爽弦图用面积拼补来证明。常见的勾股数有 3、4、5 和 5、12、13。"),
    ("math-quadratic", "一元二次方程", "一元二次方程的一般形式是 ax²+bx+c=0（a≠0）。求根公式为 x=(-b±√(b²-4ac))/2a，判别式 Δ=b²-4ac 大于零时方程有两个不相等的实数根，等于零时有两个相等的实数根，小于零时没有实数根。"),
    ("math-fractions", "分数的加减法", "同分母分数相加减，分母不变，分子相加减。异分母分数相加减，先通分，化成同分母分数再计算。计算结果能约分的要约成最简分数。"),
    ("math-circle-area", "圆的面积", "圆的面积公式是 S=πr²，其中 r 是半径，π 约等于 3.14。圆的周长公式是 C=2πr。半径扩大到原来的 2 倍，面积扩大到原来的 4 倍。"),
    ("math-triangle-angles", "三角形内角和", "任意三角形的三个内角之和等于 180 度。直角三角形的两个锐角互余，等边三角形的每个内角都是 60 度。"),
    ("math-monotonic", "函数的单调性", "如果在区间上自变量增大时函数值也增大，函数在该区间单调递增。一次函数 y=kx+b 在 k>0 时单调递增，在 k<0 时单调递减。导数大于零的区间上函数单调递增。"),
    ("math-arithmetic-seq", "等差数列", "等差数列中相邻两项的差是常数，称为公差 d。通项公式为 aₙ=a₁+(n-1)d，前 n 项和公式为 Sₙ=n(a₁+aₙ)/2。"),
    ("math-probability", "概率初步", "概率表示随机事件发生的可能性大小，取值在 0 到 1 之间。抛掷一枚均匀硬币，正面朝上的概率是 1/2。掷一枚均匀骰子，点数为 6 的概率是 1/6。"),
    ("chinese-li-bai", "李白与唐诗", "李白是唐代伟大的浪漫主义诗人，被称为诗仙。代表作有《静夜思》《望庐山瀑布》《早发白帝城》。“床前明月光，疑是地上霜”出自《静夜思》。"),
    ("chinese-metaphor", "比喻修辞", "比喻是用与本体有相似点的事物来描写或说明本体的修辞方法，由本体、喻体和比喻词构成。“弯弯的月亮像小船”运用了比喻。拟人是把物当作人来写，夸张是故意言过其实。"),
    ("chinese-classical-particles", "文言虚词", "文言文中“之”可以作助词“的”，也可以作代词。“而”常表示转折或顺承，“其”常作代词，“乎”常作语气词表示疑问。"),
    ("chinese-analects", "论语", "《论语》是记录孔子及其弟子言行的儒家经典。“学而时习之，不亦说乎”“温故而知新，可以为师矣”“己所不欲，勿施于人”都出自《论语》。"),
    ("chinese-lu-xun", "鲁迅与《故乡》", "鲁迅是中国现代文学的奠基人，原名周树人。小说《故乡》通过少年闰土与中年闰土的对比，反映了旧中国农村的凋敝。鲁迅的作品集有《呐喊》《彷徨》《朝花夕拾》。"),
    ("chinese-idioms", "成语故事", "成语“守株待兔”讽刺不劳而获、死守经验的人；“画蛇添足”比喻做多余的事反而弄巧成拙；“亡羊补牢”比喻出了问题及时补救还不算晚。"),
    ("english-past-tense", "一般过去时", "The simple past tense describes finished actions in the past. Regular verbs add -ed, for example play becomes played. Irregular verbs change form: go becomes went, see becomes saw. 一般过去时常与 yesterday、last week 连用。"),
    ("english-present-perfect", "现在完成时", "The present perfect is formed with have or has plus the past participle, as in I have finished my homework. 现在完成时表示过去的动作对现在造成的影响，常与 already、yet、since、for 连用。"),
    ("english-relative-clause", "定语从句", "A relative clause gives more information about a noun. Use who for people, which for things, and that for both. 例如 The book that I bought yesterday is interesting. 关系代词在从句中作宾语时可以省略。"),
    ("english-passive", "被动语态", "The passive voice is formed with be plus the past participle: The window was broken by the boy. 被动语态强调动作的承受者，一般现在时的被动语态是 am/is/are + 过去分词。"),
    ("science-photosynthesis-basic", "植物需要阳光", "绿色植物的叶子能利用阳光、水和二氧化碳制造养料，同时放出氧气。所以植物需要阳光才能健康生长，放在黑暗处的植物叶子会发黄。"),
    ("science-water-states", "水的三态变化", "水有固态、液态和气态三种状态。冰加热会熔化成水，水加热会蒸发成水蒸气，水蒸气遇冷会凝结成小水滴。水在 0 摄氏度结冰，在标准大气压下 100 摄氏度沸腾。"),
    ("science-magnets", "磁铁的性质", "磁铁能吸引铁、钴、镍等物质。磁铁有南极和北极两个磁极，同极相互排斥，异极相互吸引。指南针就是利用磁铁指示南北方向的。"),
    ("science-day-night", "昼夜交替", "地球绕地轴自西向东自转，自转一周约 24 小时，因此产生了昼夜交替。面向太阳的一面是白天，背向太阳的一面是黑夜。地球绕太阳公转一周约一年，产生了四季变化。"),
    ("ethics-honesty", "诚实守信", "诚实守信是中华民族的传统美德。说真话、不撒谎、答应别人的事情要做到。犯了错误要勇于承认，借了东西要按时归还。"),
    ("ethics-traffic", "遵守交通规则", "过马路要走人行横道，红灯停，绿灯行，黄灯亮了等一等。不在马路上追逐打闹，乘车时要系好安全带。未满 12 周岁的儿童不能骑自行车上路。"),
    ("ethics-respect", "尊重他人", "尊重他人就是要礼貌待人，认真倾听别人说话，不给同学起绰号。尊重不同的意见和习惯，对长辈要有礼貌，对同学要友善。"),
    ("ethics-garbage-sorting", "垃圾分类", "生活垃圾一般分为可回收物、有害垃圾、厨余垃圾和其他垃圾。废旧电池属于有害垃圾，废纸和塑料瓶属于可回收物，剩菜剩饭属于厨余垃圾。"),
    ("physics-newton-first", "牛顿第一定律", "牛顿第一定律指出，一切物体在没有受到外力作用时，总保持静止状态或匀速直线运动状态。物体保持原来运动状态的性质叫惯性，质量是惯性大小的量度。"),
    ("physics-ohm", "欧姆定律", "欧姆定律指出，导体中的电流跟导体两端的电压成正比，跟导体的电阻成反比，公式为 I=U/R。电阻的单位是欧姆，串联电路总电阻等于各电阻之和。"),
    ("physics-buoyancy", "浮力与阿基米德原理", "浸在液体中的物体受到竖直向上的浮力。阿基米德原理指出，浮力的大小等于物体排开液体所受的重力，公式为 F浮=ρ液gV排。浮力大于重力时物体上浮。"),
    ("physics-refraction", "光的折射", "光从一种介质斜射入另一种介质时传播方向发生偏折，这种现象叫光的折射。插入水中的筷子看起来向上弯折，就是折射造成的。光从空气斜射入水中时，折射角小于入射角。"),
    ("physics-energy-conservation", "能量守恒定律", "能量既不会凭空产生，也不会凭空消失，只能从一种形式转化为另一种形式，或从一个物体转移到另一个物体，而总量保持不变。"),
    ("chem-periodic-table", "元素周期表", "元素周期表按原子序数递增排列元素。同一周期从左到右金属性减弱、非金属性增强；同一主族从上到下金属性增强。氢的原子序数是 1，氧的原子序数是 8。"),
    ("chem-neutralization", "酸碱中和反应", "酸和碱作用生成盐和水的反应叫中和反应，例如盐酸与氢氧化钠反应生成氯化钠和水。中性溶液的 pH 等于 7，酸性溶液 pH 小于 7，碱性溶液 pH 大于 7。"),
    ("chem-redox", "氧化还原反应", "有电子转移的反应是氧化还原反应。失去电子、化合价升高的物质被氧化，是还原剂；得到电子、化合价降低的物质被还原，是氧化剂。"),
    ("chem-mass-conservation", "质量守恒定律", "参加化学反应的各物质的质量总和等于反应后生成的各物质的质量总和。原因是化学反应前后原子的种类、数目和质量都不变。"),
    ("bio-cell", "细胞的结构", "植物细胞有细胞壁、细胞膜、细胞质、细胞核、液泡和叶绿体，动物细胞没有细胞壁和叶绿体。细胞核含有遗传物质，是细胞的控制中心；线粒体是有氧呼吸的主要场所。"),
    ("bio-dna", "DNA 双螺旋结构", "DNA 由两条反向平行的脱氧核苷酸链盘旋成双螺旋结构，由沃森和克里克于 1953 年提出。碱基互补配对原则是 A 与 T 配对，G 与 C 配对。"),
    ("bio-photosynthesis", "光合作用", "光合作用是绿色植物在叶绿体中利用光能，把二氧化碳和水转化成储存能量的有机物并释放氧气的过程。光反应发生在类囊体薄膜上，暗反应发生在叶绿体基质中。"),
    ("bio-mendel", "孟德尔遗传定律", "孟德尔用豌豆杂交实验发现了分离定律和自由组合定律。杂合子 Aa 自交，后代的性状分离比为 3:1，基因型比为 1:2:1。"),
    ("politics-constitution", "宪法", "宪法是国家的根本大法，具有最高的法律效力，规定国家的根本制度和根本任务。每年 12 月 4 日是国家宪法日。公民的基本权利和义务由宪法规定。"),
    ("politics-market-economy", "市场经济", "市场在资源配置中起决定性作用，同时更好发挥政府作用。价格受供求关系影响，供不应求时价格上涨，供过于求时价格下降。"),
    ("politics-npc", "人民代表大会制度", "人民代表大会制度是我国的根本政治制度。全国人民代表大会是最高国家权力机关，每届任期五年，行使立法权、决定权、任免权和监督权。"),
    ("history-qin", "秦始皇统一六国", "公元前 221 年，秦王嬴政灭六国，建立了中国历史上第一个统一的多民族的中央集权国家秦朝，自称始皇帝。秦始皇统一文字、货币和度量衡，推行郡县制。"),
    ("history-silk-road", "丝绸之路", "西汉时张骞两次出使西域，开辟了连接东西方的丝绸之路。丝绸之路从长安出发，经河西走廊通往中亚、西亚，把中国的丝绸、瓷器带到西方。"),
    ("history-xinhai", "辛亥革命", "1911 年，孙中山领导的辛亥革命推翻了清朝统治，结束了中国两千多年的君主专制制度。1912 年中华民国临时政府在南京成立。"),
    ("history-industrial-revolution", "工业革命", "第一次工业革命 18 世纪 60 年代从英国开始，以瓦特改良蒸汽机为标志，人类进入蒸汽时代。第二次工业革命以电力的广泛应用为标志，人类进入电气时代。"),
    ("geo-monsoon", "季风气候", "我国东部地区主要是季风气候，夏季受来自海洋的东南季风影响，高温多雨；冬季受来自大陆的西北季风影响，寒冷干燥。"),
    ("geo-plates", "板块构造学说", "板块构造学说认为，地球岩石圈由六大板块组成。板块与板块交界地带地壳比较活跃，多火山和地震。喜马拉雅山脉是亚欧板块与印度洋板块碰撞挤压形成的。"),
    ("geo-yangtze", "长江", "长江是我国第一长河，全长约 6300 千米，发源于青藏高原的唐古拉山脉，注入东海。三峡工程位于长江上游与中游的分界处。"),
    ("geo-latlong", "经线和纬线", "纬线是与赤道平行的圆圈，赤道是最长的纬线，纬度为 0 度。经线连接南北两极，0 度经线又叫本初子午线，经过英国伦敦格林尼治天文台。"),
]

# (level, subject, [(question, [four choices with the correct one first], gold_doc), x4])
# The correct choice is rotated into position A, B, C, D for the four items.
GROUPS = [
    ("primary", "Chinese", [
        ("“床前明月光，疑是地上霜”出自哪首诗？", ["《静夜思》", "《春晓》", "《咏鹅》", "《登鹳雀楼》"], "chinese-li-bai"),
        ("“弯弯的月亮像小船”运用了什么修辞手法？", ["比喻", "拟人", "夸张", "排比"], "chinese-metaphor"),
        ("成语“守株待兔”讽刺的是什么样的人？", ["不劳而获、死守经验的人", "勤奋好学的人", "乐于助人的人", "善于观察的人"], "chinese-idioms"),
        ("被称为“诗仙”的唐代诗人是谁？", ["李白", "杜甫", "白居易", "王维"], "chinese-li-bai"),
    ]),
    ("primary", "Mathematics", [
        ("异分母分数相加减时首先要做什么？", ["通分", "约分", "把分子相乘", "把分母相加"], "math-fractions"),
        ("圆的面积公式是什么？", ["S=πr²", "S=2πr", "S=πd", "S=r²"], "math-circle-area"),
        ("三角形的三个内角之和是多少度？", ["180 度", "90 度", "360 度", "270 度"], "math-triangle-angles"),
        ("圆的半径扩大到原来的 2 倍，面积扩大到原来的几倍？", ["4 倍", "2 倍", "8 倍", "不变"], "math-circle-area"),
    ]),
    ("primary", "English", [
        ("go 的一般过去时形式是什么？", ["went", "goed", "gone", "going"], "english-past-tense"),
        ("一般过去时常与下列哪个时间词连用？", ["yesterday", "tomorrow", "now", "next week"], "english-past-tense"),
        ("play 的过去式是什么？", ["played", "plaied", "plays", "playing"], "english-past-tense"),
        ("see 的过去式是什么？", ["saw", "seed", "seen", "sees"], "english-past-tense"),
    ]),
    ("primary", "Science", [
        ("水在标准大气压下多少摄氏度沸腾？", ["100 摄氏度", "0 摄氏度", "50 摄氏度", "200 摄氏度"], "science-water-states"),
        ("磁铁的两个磁极之间有什么规律？", ["同极相斥，异极相吸", "同极相吸，异极相斥", "总是相互吸引", "总是相互排斥"], "science-magnets"),
        ("昼夜交替是由什么引起的？", ["地球自转", "地球公转", "月球公转", "太阳自转"], "science-day-night"),
        ("绿色植物制造养料需要什么？", ["阳光、水和二氧化碳", "只需要土壤", "只需要黑暗", "氧气和糖"], "science-photosynthesis-basic"),
    ]),
    ("primary", "Ethics", [
        ("过马路时应该走哪里？", ["人行横道", "机动车道", "绿化带", "任何地方"], "ethics-traffic"),
        ("废旧电池属于哪一类垃圾？", ["有害垃圾", "可回收物", "厨余垃圾", "其他垃圾"], "ethics-garbage-sorting"),
        ("借了同学的东西应该怎么做？", ["按时归还", "据为己有", "随便丢弃", "转借他人"], "ethics-honesty"),
        ("下面哪种做法体现了尊重他人？", ["认真倾听别人说话", "给同学起绰号", "打断别人讲话", "嘲笑别人的口音"], "ethics-respect"),
    ]),
    ("middle", "Chinese", [
        ("“温故而知新，可以为师矣”出自哪部经典？", ["《论语》", "《孟子》", "《庄子》", "《史记》"], "chinese-analects"),
        ("鲁迅的原名是什么？", ["周树人", "周作人", "沈雁冰", "舒庆春"], "chinese-lu-xun"),
        ("小说《故乡》中，作者通过对比哪个人物反映农村凋敝？", ["闰土", "孔乙己", "阿Q", "祥林嫂"], "chinese-lu-xun"),
        ("文言文中“乎”常作什么词？", ["表示疑问的语气词", "表示地点的名词", "表示数量的量词", "表示动作的动词"], "chinese-classical-particles"),
    ]),
    ("middle", "Mathematics", [
        ("直角三角形两直角边为 3 和 4，斜边是多少？", ["5", "6", "7", "12"], "math-pythagorean"),
        ("一元二次方程判别式小于零时，方程有几个实数根？", ["没有实数根", "一个实数根", "两个相等实数根", "两个不等实数根"], "math-quadratic"),
        ("一次函数 y=kx+b 在 k>0 时的单调性是？", ["单调递增", "单调递减", "先增后减", "不变"], "math-monotonic"),
        ("掷一枚均匀骰子，点数为 6 的概率是多少？", ["1/6", "1/2", "1/3", "1"], "math-probability"),
    ]),
    ("middle", "Physics", [
        ("物体保持原来运动状态的性质叫什么？", ["惯性", "弹性", "重力", "摩擦力"], "physics-newton-first"),
        ("欧姆定律的公式是什么？", ["I=U/R", "U=I/R", "R=UI", "P=UI"], "physics-ohm"),
        ("插入水中的筷子看起来弯折是什么现象？", ["光的折射", "光的反射", "光的直线传播", "光的色散"], "physics-refraction"),
        ("阿基米德原理中浮力等于什么？", ["物体排开液体所受的重力", "物体自身的重力", "液体的总重力", "容器的重力"], "physics-buoyancy"),
    ]),
    ("middle", "History", [
        ("秦朝建立于哪一年？", ["公元前 221 年", "公元前 206 年", "公元 25 年", "公元 618 年"], "history-qin"),
        ("开辟丝绸之路的是谁出使西域？", ["张骞", "郑和", "玄奘", "班超"], "history-silk-road"),
        ("辛亥革命推翻了哪个王朝？", ["清朝", "明朝", "元朝", "宋朝"], "history-xinhai"),
        ("第一次工业革命的标志是什么？", ["瓦特改良蒸汽机", "电力的广泛应用", "计算机的发明", "飞机的发明"], "history-industrial-revolution"),
    ]),
    ("middle", "Geography", [
        ("我国东部地区夏季主要受什么季风影响？", ["东南季风", "西北季风", "东北季风", "西南干风"], "geo-monsoon"),
        ("喜马拉雅山脉是哪两个板块碰撞形成的？", ["亚欧板块与印度洋板块", "太平洋板块与美洲板块", "非洲板块与南极洲板块", "美洲板块与亚欧板块"], "geo-plates"),
        ("长江注入哪个海？", ["东海", "黄海", "渤海", "南海"], "geo-yangtze"),
        ("0 度经线又叫什么？", ["本初子午线", "赤道", "北回归线", "国际日期变更线"], "geo-latlong"),
    ]),
    ("high", "Chinese", [
        ("“己所不欲，勿施于人”表达的是哪家思想？", ["儒家", "道家", "法家", "墨家"], "chinese-analects"),
        ("下列哪部是鲁迅的作品集？", ["《呐喊》", "《女神》", "《边城》", "《雷雨》"], "chinese-lu-xun"),
        ("文言文中“而”常表示什么关系？", ["转折或顺承", "比较或选择", "时间或地点", "数量或程度"], "chinese-classical-particles"),
        ("“亡羊补牢”比喻什么？", ["出了问题及时补救还不算晚", "做多余的事", "不劳而获", "目光短浅"], "chinese-idioms"),
    ]),
    ("high", "Mathematics", [
        ("等差数列的通项公式是？", ["aₙ=a₁+(n-1)d", "aₙ=a₁qⁿ⁻¹", "aₙ=n²", "aₙ=a₁+nd²"], "math-arithmetic-seq"),
        ("一元二次方程的求根公式中判别式是？", ["b²-4ac", "b²+4ac", "4ac-b", "a²-4bc"], "math-quadratic"),
        ("导数大于零的区间上函数如何变化？", ["单调递增", "单调递减", "取得最大值", "保持不变"], "math-monotonic"),
        ("抛掷一枚均匀硬币，正面朝上的概率是多少？", ["1/2", "1/3", "1/4", "1"], "math-probability"),
    ]),
    ("high", "Chemistry", [
        ("酸和碱反应生成盐和水的反应叫什么？", ["中和反应", "置换反应", "分解反应", "化合反应"], "chem-neutralization"),
        ("氧化还原反应中得到电子的物质是？", ["氧化剂", "还原剂", "催化剂", "溶剂"], "chem-redox"),
        ("质量守恒的原因是反应前后什么不变？", ["原子的种类、数目和质量", "分子的种类", "物质的状态", "物质的颜色"], "chem-mass-conservation"),
        ("氧的原子序数是多少？", ["8", "1", "6", "16"], "chem-periodic-table"),
    ]),
    ("high", "Biology", [
        ("DNA 碱基互补配对中 A 与什么配对？", ["T", "G", "C", "U"], "bio-dna"),
        ("光合作用的暗反应发生在哪里？", ["叶绿体基质", "类囊体薄膜", "线粒体", "细胞核"], "bio-photosynthesis"),
        ("杂合子 Aa 自交，后代性状分离比是？", ["3:1", "1:1", "9:3:3:1", "1:2:1"], "bio-mendel"),
        ("动物细胞没有下列哪种结构？", ["细胞壁", "细胞膜", "细胞核", "线粒体"], "bio-cell"),
    ]),
    ("high", "Politics", [
        ("我国的根本大法是什么？", ["宪法", "刑法", "民法典", "行政法"], "politics-constitution"),
        ("我国的根本政治制度是什么？", ["人民代表大会制度", "政治协商制度", "民族区域自治制度", "基层群众自治制度"], "politics-npc"),
        ("供不应求时商品价格会怎样？", ["上涨", "下降", "不变", "归零"], "politics-market-economy"),
        ("国家宪法日是每年的哪一天？", ["12 月 4 日", "10 月 1 日", "3 月 15 日", "7 月 1 日"], "politics-constitution"),
    ]),
]


def main() -> None:
    root = pathlib.Path(__file__).resolve().parent.parent / "data"
    root.mkdir(exist_ok=True)
    ids = {d[0] for d in DOCS}
    assert len(DOCS) == 50 and len(ids) == 50
    with open(root / "corpus.jsonl", "w", encoding="utf-8") as f:
        for doc_id, title, text in DOCS:
            f.write(json.dumps({"id": doc_id, "title": title, "text": text}, ensure_ascii=False) + "\n")
    level_code = {"primary": "p", "middle": "m", "high": "h"}
    count = 0
    with open(root / "suite.jsonl", "w", encoding="utf-8") as f:
        for level, subject, items in GROUPS:
            assert len(items) == 4
            for pos, (question, choices, gold) in enumerate(items):
                assert gold in ids and len(choices) == 4
                correct, *wrong = choices
                arranged = wrong[:pos] + [correct] + wrong[pos:]
                item = {
                    "id": f"{level_code[level]}-{subject.lower()}-{pos + 1}",
                    "level": level,
                    "subject": subject,
                    "question": question,
                    "choices": arranged,
                    "answer": "ABCD"[pos],
                    "gold_doc": gold,
                }
                f.write(json.dumps(item, ensure_ascii=False) + "\n")
                count += 1
    assert count == 60


if __name__ == "__main__":
    main()
